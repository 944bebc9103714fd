#pragma once

#include <string>

#include "xpz/exppoly.hpp"

namespace xpz {

// Star product on upper-half-plane analytic Dirichlet polynomials:
// every coefficient pair c_f(q1) c_g(q2) lands at q = q1/q2 with weight
//   2 if q > 1,  1 if q = 1,  0 if q < 1.
// Equivalent to f(z) g(-z) plus its Hilbert-transform projection; neither
// commutative nor associative.  Exact over the given terms (no truncation).
//
// OpenMP-parallel with a fixed chunking, so the result is bit-identical
// for any thread count.
ExpPoly star_product(const ExpPoly& f, const ExpPoly& g);

// star_product(f, f) exploiting pair symmetry; identical result.
ExpPoly star_square(const ExpPoly& f);

// S_{f,g}(z) = (f*g)(z) - (f*g)(0); vanishes at z = 0 as a polynomial
// identity.
ExpPoly s_func(const ExpPoly& f, const ExpPoly& g);

namespace ref {
// Straightforward serial star product (nested loops over a sorted map).
// Kept as the reference implementation for tests and benchmarks.
ExpPoly star_product(const ExpPoly& f, const ExpPoly& g);
}  // namespace ref

// Principal-value quadrature of the subtracted Hilbert identity
//   p(z) = PV int dt/(i pi) p(t) [1/(t-z) - 1/t]
// over [-window, window], returned as (quadrature - eval(p, z)).
// Requires p(0) = 0; the tail decays like O(1/window).
cplx pv_hilbert_check(const ExpPoly& p, double z, double window);

// Quadrature route to the star product, independent of the algebraic rule:
// real z uses the boundary term plus the PV integral of f(t)g(-t)/(t-z);
// Im z > 0 uses the plain (non-PV) contour form.  Returns
// quadrature - eval(star_product(f,g), z).
cplx pv_star_check(const ExpPoly& f, const ExpPoly& g, cplx z, double window);

// JSON serialization: array of {num, den, re, im} sorted by frequency,
// num/den as decimal strings.  Round-trips bit-exactly.
std::string poly_to_json(const ExpPoly& p);
ExpPoly poly_from_json(const std::string& text);

}  // namespace xpz
