#pragma once

#include <span>
#include <vector>

#include "densepoly.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "unipoly.hpp"

namespace factorforge {

/// Sylvester matrix S(g, h) of two polynomials viewed as univariates in y with
/// coefficients in F[x]. Layout: for column c < d2 the entries are
/// (0,...,0, g_0, g_1, ..., g_d1, 0, ...) with c leading zeroes; columns
/// d2..d1+d2-1 carry h's coefficients the same way. (The defining text and the
/// displayed matrix in the standard definition disagree about whether g_0 or
/// g_d1 comes first; this is the displayed-matrix layout, which only changes
/// the determinant's sign.)
struct SylvesterMatrix {
    int d1 = 0;
    int d2 = 0;
    int nvars = 0;
    std::vector<DensePoly> entries; // (d1+d2)^2, row major

    int dim() const { return d1 + d2; }
    const DensePoly& at(int r, int c) const { return entries[std::size_t(r) * dim() + c]; }
    DensePoly& at(int r, int c) { return entries[std::size_t(r) * dim() + c]; }

    FpMatrix instantiate(std::span<const Fp> point) const {
        FpMatrix m{std::size_t(dim()), std::size_t(dim())};
        for (int r = 0; r < dim(); ++r)
            for (int c = 0; c < dim(); ++c) m.at(std::size_t(r), std::size_t(c)) = at(r, c).eval(point);
        return m;
    }
};

inline SylvesterMatrix sylvester(std::span<const DensePoly> gcoeffs,
                                 std::span<const DensePoly> hcoeffs) {
    int d1 = int(gcoeffs.size()) - 1;
    int d2 = int(hcoeffs.size()) - 1;
    if (d1 < 1 || d2 < 1) fail(Errc::domain, "sylvester() needs positive degrees on both sides");
    if (gcoeffs.back().is_zero() || hcoeffs.back().is_zero())
        fail(Errc::domain, "sylvester() leading coefficient is zero; degree ill-defined");
    int nv = gcoeffs[0].nvars();
    SylvesterMatrix s;
    s.d1 = d1;
    s.d2 = d2;
    s.nvars = nv;
    s.entries.assign(std::size_t(s.dim()) * s.dim(), DensePoly::zero(nv));
    for (int c = 0; c < d2; ++c)
        for (int i = 0; i <= d1; ++i) s.at(c + i, c) = gcoeffs[i];
    for (int c = 0; c < d1; ++c)
        for (int j = 0; j <= d2; ++j) s.at(c + j, d2 + c) = hcoeffs[j];
    return s;
}

namespace detail {

/// Fraction-free (Bareiss) determinant; all divisions are exact by
/// construction, which try_divide_exact enforces.
inline DensePoly bareiss_determinant(SylvesterMatrix m) {
    int n = m.dim();
    DensePoly prev = DensePoly::constant(m.nvars, Fp::one());
    bool negate = false;
    for (int k = 0; k + 1 < n; ++k) {
        if (m.at(k, k).is_zero()) {
            int pivot = -1;
            for (int r = k + 1; r < n; ++r)
                if (!m.at(r, k).is_zero()) { pivot = r; break; }
            if (pivot < 0) return DensePoly::zero(m.nvars);
            for (int c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(pivot, c));
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                DensePoly num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                auto q = DensePoly::try_divide_exact(num, prev);
                if (!q) fail(Errc::internal, "Bareiss division was not exact");
                m.at(i, j) = std::move(*q);
            }
            m.at(i, k) = DensePoly::zero(m.nvars);
        }
        prev = m.at(k, k);
    }
    DensePoly det = m.at(n - 1, n - 1);
    return negate ? det.scaled(-Fp::one()) : det;
}

} // namespace detail

/// Coefficient vectors of a polynomial viewed as a univariate in yvar,
/// lowest power first, up to its exact y-degree.
inline std::vector<DensePoly> y_coefficient_vector(const DensePoly& p, int yvar) {
    int d = p.degree_in(yvar);
    std::vector<DensePoly> out;
    for (int i = 0; i <= d; ++i) out.push_back(p.coefficient_of_power(yvar, i));
    return out;
}

/// Resultant of g and h with respect to yvar, as the Bareiss determinant of
/// their Sylvester matrix. Both inputs need positive degree in yvar.
inline DensePoly resultant_y(const DensePoly& g, const DensePoly& h, int yvar) {
    int d1 = g.degree_in(yvar);
    int d2 = h.degree_in(yvar);
    if (d1 < 1 || d2 < 1)
        fail(Errc::domain, "resultant needs positive degree in the eliminated variable");
    auto gc = y_coefficient_vector(g, yvar);
    auto hc = y_coefficient_vector(h, yvar);
    DensePoly det = detail::bareiss_determinant(sylvester(gc, hc));
    // deg(Res) <= d2*deg(g) + d1*deg(h) always; equals the 2*d1*d2 shape when
    // total degree and y-degree coincide.
    if (det.degree() > d2 * g.degree() + d1 * h.degree())
        fail(Errc::internal, "resultant degree exceeded its bound");
    return det;
}

/// The gcd criterion: the resultant vanishes identically iff g and h share a
/// factor of positive y-degree.
inline bool gcd_is_nontrivial(const DensePoly& g, const DensePoly& h, int yvar) {
    return resultant_y(g, h, yvar).is_zero();
}

/// Jacobian of the coefficient-matching system Q_0..Q_{d-1} with respect to
/// the unknown factor coefficients, evaluated at the seed pair. Column i < d1
/// reads (0,...,0, h_0, ..., h_{d2-1}, 1, 0, ...) with i leading zeroes, and
/// symmetrically for the g side: the Sylvester matrix up to a permutation.
/// Nonsingular exactly when gcd(gseed, hseed) = 1.
inline FpMatrix jacobian_at_seed(const UniPoly& gseed, const UniPoly& hseed) {
    if (!gseed.is_monic() || !hseed.is_monic())
        fail(Errc::domain, "jacobian_at_seed expects monic seed polynomials");
    int d1 = gseed.deg(), d2 = hseed.deg();
    if (d1 < 1 || d2 < 1) fail(Errc::domain, "jacobian_at_seed expects positive degrees");
    int d = d1 + d2;
    FpMatrix a{std::size_t(d), std::size_t(d)};
    for (int l = 0; l < d; ++l) {
        for (int i = 0; i < d1; ++i) a.at(std::size_t(l), std::size_t(i)) = hseed[l - i];
        for (int j = 0; j < d2; ++j) a.at(std::size_t(l), std::size_t(d1 + j)) = gseed[l - j];
    }
    return a;
}

/// Sylvester matrix of two constant-coefficient (seed) polynomials.
inline FpMatrix sylvester_at_seed(const UniPoly& gseed, const UniPoly& hseed) {
    int d1 = gseed.deg(), d2 = hseed.deg();
    if (d1 < 1 || d2 < 1) fail(Errc::domain, "sylvester_at_seed expects positive degrees");
    std::vector<DensePoly> gc, hc;
    for (int i = 0; i <= d1; ++i) gc.push_back(DensePoly::constant(0, gseed[i]));
    for (int j = 0; j <= d2; ++j) hc.push_back(DensePoly::constant(0, hseed[j]));
    return sylvester(gc, hc).instantiate({});
}

} // namespace factorforge
