#ifndef HIERARCHIA_SCATTERING_HPP
#define HIERARCHIA_SCATTERING_HPP

#include "hierarchia/hierarchy.hpp"
#include "hierarchia/numeric.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace hierarchia {

struct PoleAtZeta : std::domain_error {
    using std::domain_error::domain_error;
};
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BoundaryNotSettled : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroDenominator : std::domain_error {
    using std::domain_error::domain_error;
};

struct SpectralPoint {
    cplx lambda;
    cplx z;
    cplx zeta;
    bool zbc = false;

    // z = sqrt(lambda^2 - 1) on the principal branch, zeta = lambda + z.
    static SpectralPoint nzbc(cplx lambda);
    // Zero background: z := lambda.
    static SpectralPoint zero_bc(cplx lambda);
};

using Vec2 = std::array<cplx, 2>;

enum class JostColumn { Minus1, Minus2, Plus1, Plus2 };
const char* jost_column_name(JostColumn c);

// Value of Psi at its own infinity: a column of E^-/E^+, or of the identity for ZBC.
Vec2 jost_boundary(const Potential& q, const SpectralPoint& p, JostColumn c);

Potential dark_soliton(cplx q_minus, cplx q_plus);
// zeta_+ with zeta_+^2 = q_+/q_-, on the half circle e^{i[0,pi)}.
cplx dark_zeta_plus(cplx q_minus, cplx q_plus);
cplx dark_transmission(cplx q_minus, cplx q_plus, const SpectralPoint& p);

Vec2 jost_reference(double x, const SpectralPoint& p, cplx q_minus, cplx q_plus, JostColumn c);

struct JostOptions {
    double tol = 1e-10;
    double box_left = -40.0;
    double box_right = 40.0;
    double settle_tol = 1e-12;
    long max_steps = 2000000;
    bool residual = true;
};

struct ScatterState {
    std::vector<double> x;
    std::vector<Vec2> psi;
    SpectralPoint point;
    JostColumn column;
    double residual = 0.0;
    long steps = 0;
};

// Integrates the modified Jost system from the endpoint of the grid nearest the column's infinity.
// The grid must be strictly increasing.
ScatterState integrate_jost(const Potential& q, const SpectralPoint& p, JostColumn c, const std::vector<double>& grid,
                            const JostOptions& opt = {});

// Max deviation of a column from the modified system, via 6th-order central differences.
double jost_fd_residual(const Potential& q, const SpectralPoint& p, JostColumn c,
                        const std::function<Vec2(double)>& psi, const std::vector<double>& xs, double h = 1e-3);

struct TransmissionResult {
    cplx a;
    double spread = 0.0;
    double residual = 0.0;
};

TransmissionResult transmission(const Potential& q, const SpectralPoint& p, const JostOptions& opt = {});

struct HamiltonianValue {
    cplx value;
    double quad_error = 0.0;
};

HamiltonianValue hamiltonian_numeric(const Hamiltonian& h, const Potential& q, const QuadratureSpec& spec = {});

struct ExpansionSample {
    double t;
    cplx log_a;
    cplx remainder;
};

struct ExpansionReport {
    int N;
    bool zbc;
    double t0;
    double exponent;
    double expected;
    std::vector<cplx> hamiltonians;
    std::vector<ExpansionSample> samples;
};

// Samples lambda = i t for t geometric in [t0, 4 t0].
ExpansionReport expansion_check(const Potential& q, int N, double t0, int samples = 9, const JostOptions& opt = {});

}  // namespace hierarchia

#endif
