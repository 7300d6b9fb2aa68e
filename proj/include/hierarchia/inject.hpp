#ifndef HIERARCHIA_INJECT_HPP
#define HIERARCHIA_INJECT_HPP

#include "hierarchia/exact.hpp"

#include <string>

// Single-coefficient perturbations for negative-control runs.
// Keys look like "coeff/D/6/1", "genfun/D-lemma-lhs/3/2", "symbol/V/0/0".
namespace hierarchia::inject {

void set(const std::string& key, const Rational& delta);
void clear();
bool active();
Rational delta(const std::string& key);
std::string current_key();

class Scope {
public:
    Scope(const std::string& key, const Rational& delta) { set(key, delta); }
    ~Scope() { clear(); }
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;
};

}  // namespace hierarchia::inject

#endif
