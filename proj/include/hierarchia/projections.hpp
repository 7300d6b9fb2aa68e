#ifndef HIERARCHIA_PROJECTIONS_HPP
#define HIERARCHIA_PROJECTIONS_HPP

#include "hierarchia/diffpoly.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace hierarchia {

// Monomials with exactly k factors of derivative order >= 1.
DiffPoly pi(const DiffPoly& p, int k);
// Same, restricted to monomials where some derivative factor lies on qbar.
DiffPoly pi_tilde(const DiffPoly& p, int k);

enum class Generators { QDerivs, QDerivsAndRho };

struct ClassSpec {
    int min_deriv_factors = 2;
    int max_total_derivs = 0;
    Generators gens = Generators::QDerivs;
};

// RHO stands for q*qbar - 1, differentiated `order` times.
enum class AtomKind { Q, QBAR, RHO };

struct Atom {
    AtomKind kind;
    int order;
    int power;
};

struct Witness {
    GaussianRational coeff;
    std::vector<Atom> atoms;
};

struct CertifiedRemainder {
    DiffPoly value;
    std::vector<Witness> certificate;
};

class CertificateMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool in_nls_class(const DiffPoly& p, const ClassSpec& spec);

DiffPoly expand(const Witness& w);
int class_factor_count(const Witness& w, Generators gens);
int witness_derivs(const Witness& w);

// Throws CertificateMismatch when the witnesses do not sum to the value.
bool check_certificate(const CertifiedRemainder& r, const ClassSpec& spec);

// Builds witnesses for p; nullopt if p is not in the class.
std::optional<CertifiedRemainder> certify(const DiffPoly& p, const ClassSpec& spec);

nlohmann::json to_json(const Witness& w);

}  // namespace hierarchia

#endif
