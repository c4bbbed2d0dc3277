#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "circuit_expand.hpp"
#include "circuit_ops.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "resultant.hpp"
#include "rng.hpp"
#include "seed.hpp"
#include "unipoly.hpp"

namespace factorforge {

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

/// Coordinate change that puts f into lifting position: a shift x_i -> x_i +
/// a_i*y makes f monic in y of degree equal to its total degree, a translation
/// moves the good seed point to the origin, and a scalar makes the leading
/// coefficient 1. fhat = f(sigma(x)) / lead_scale.
struct Normalization {
    std::uint32_t nvars = 0;
    std::uint32_t yvar = 0;
    std::vector<Fp> shift;     // a_i, entry at yvar unused
    std::vector<Fp> translate; // b_v for every variable including yvar
    Fp lead_scale = Fp::one();

    AffineMap forward_map() const {
        AffineMap m;
        m.out_nvars = nvars;
        for (std::uint32_t v = 0; v < nvars; ++v) {
            AffineExpr e;
            e.constant = translate[v];
            e.terms.push_back({v, Fp::one()});
            if (v != yvar && !shift[v].is_zero()) e.terms.push_back({yvar, shift[v]});
            m.exprs.push_back(std::move(e));
        }
        return m;
    }

    AffineMap inverse_map() const {
        // x_v = w_v - a_v*(w_y - b_y) - b_v for v != yvar, and y = w_y - b_y.
        AffineMap m;
        m.out_nvars = nvars;
        for (std::uint32_t v = 0; v < nvars; ++v) {
            AffineExpr e;
            if (v == yvar) {
                e.constant = -translate[v];
                e.terms.push_back({v, Fp::one()});
            } else {
                e.constant = shift[v] * translate[yvar] - translate[v];
                e.terms.push_back({v, Fp::one()});
                if (!shift[v].is_zero()) e.terms.push_back({yvar, -shift[v]});
            }
            m.exprs.push_back(std::move(e));
        }
        return m;
    }

    /// fhat as a circuit: f composed with the forward map, scaled monic.
    Circuit apply(const Circuit& f) const {
        Circuit shifted = substitute_affine(f, forward_map());
        if (lead_scale == Fp::one()) return shifted;
        FpMatrix m(1, 1);
        m.at(0, 0) = lead_scale.inverse();
        return linear_combination(shifted, m, {});
    }

    bool is_identity() const {
        if (lead_scale != Fp::one()) return false;
        for (Fp a : shift)
            if (!a.is_zero()) return false;
        for (Fp b : translate)
            if (!b.is_zero()) return false;
        return true;
    }
};

struct NormalizeResult {
    Normalization norm;
    Circuit fhat;
    SeedFactorization seeds;
    int total_degree = 0;
    int attempts = 0;
};

/// Puts a nonconstant single-output circuit into lifting position. Retries
/// fresh shift/translation pairs from a grid of size >= 4d^2 until the image
/// is monic of full degree with nonzero constant term (and, if a candidate
/// seed split is supplied, until that split multiplies to the image and is
/// coprime). Throws a normalization failure after 64 attempts.
/// `allow_identity` lets the zero shift/translation be tried first; callers
/// re-normalizing after a failed round turn it off to force fresh coordinates.
inline NormalizeResult normalize(const Circuit& f,
                                 const std::optional<std::pair<UniPoly, UniPoly>>& split,
                                 Rng& rng,
                                 std::optional<std::uint32_t> yvar_opt = {},
                                 int degree_cap = 16,
                                 bool allow_identity = true) {
    if (f.num_outputs() != 1)
        fail(Errc::structural, "normalize expects a single-output circuit");
    const std::uint32_t n = f.nvars();
    if (n == 0) fail(Errc::domain, "normalize expects a nonconstant polynomial");
    const int d = degree_probe(f, rng, degree_cap);
    if (d <= 0) fail(Errc::domain, "normalize expects a nonconstant polynomial");
    const std::uint32_t yvar = yvar_opt.value_or(n - 1);
    if (yvar >= n) fail(Errc::structural, "normalize yvar out of range");
    const std::uint64_t grid = std::max<std::uint64_t>(4 * std::uint64_t(d) * std::uint64_t(d), 64);

    for (int attempt = allow_identity ? 0 : 1; attempt < 64; ++attempt) {
        Normalization norm;
        norm.nvars = n;
        norm.yvar = yvar;
        norm.shift.assign(n, Fp::zero());
        norm.translate.assign(n, Fp::zero());
        if (attempt >= 2) {
            for (std::uint32_t v = 0; v < n; ++v)
                if (v != yvar) norm.shift[v] = rng.grid_element(grid);
        }
        if (attempt >= 1) {
            for (std::uint32_t v = 0; v < n; ++v) norm.translate[v] = rng.grid_element(grid);
        }

        Circuit shifted = substitute_affine(f, norm.forward_map());
        UniPoly w = univariate_image(shifted, yvar, d);
        if (w.deg() < d) continue; // top coefficient vanished; bad shift
        norm.lead_scale = w.leading();
        UniPoly u = w.monic();
        if (u[0].is_zero()) continue; // want a nonzero constant term at the seed
        if (split) {
            if (split->first * split->second != u) continue;
            if (uni_gcd(split->first, split->second).deg() != 0) continue;
        }

        NormalizeResult res;
        res.norm = norm;
        res.fhat = norm.lead_scale == Fp::one()
                       ? std::move(shifted)
                       : [&] {
                             FpMatrix m(1, 1);
                             m.at(0, 0) = norm.lead_scale.inverse();
                             return linear_combination(shifted, m, {});
                         }();
        res.seeds = seed_factorization(u, rng);
        res.total_degree = d;
        res.attempts = attempt + 1;
        return res;
    }
    fail(Errc::normalization_failure,
         "normalization failed after 64 attempts; characteristic too small or degenerate input");
}

// ---------------------------------------------------------------------------
// The coefficient-matching system Q
// ---------------------------------------------------------------------------

/// Circuits for the polynomials Q_l(u, w) = sum_j u_j * w_{l-j} - f_l, with
/// the monic boundary convention u_{d1} = w_{d2} = 1 and indices restricted to
/// the valid ranges. fcoeffs computes f_0..f_{d-1}; qcircuits is the same
/// system as a standalone circuit whose variables are (x..., u_0..u_{d1-1},
/// w_0..w_{d2-1}).
struct QSystem {
    int d = 0, d1 = 0, d2 = 0;
    std::uint32_t nvars = 0;
    std::uint32_t yvar = 0;
    Circuit fcoeffs;
    Circuit qcircuits;
};

inline QSystem build_Q(const Circuit& fhat, std::uint32_t yvar, int d1, int d2) {
    if (fhat.num_outputs() != 1) fail(Errc::structural, "build_Q expects a single-output circuit");
    if (d1 < 1 || d2 < 1) fail(Errc::structural, "build_Q expects positive split degrees");
    const int d = d1 + d2;

    QSystem qs;
    qs.d = d;
    qs.d1 = d1;
    qs.d2 = d2;
    qs.nvars = fhat.nvars();
    qs.yvar = yvar;

    GradedCircuit graded = y_coefficients(fhat, yvar, d);
    {
        // keep only f_0..f_{d-1}: the top coefficient is pinned to 1 by
        // normalization and never enters the system
        std::vector<GateId> outs;
        for (int j = 0; j < d; ++j)
            outs.push_back(graded.circuit.outputs()[graded.index(0, j)]);
        qs.fcoeffs = prune(Circuit(graded.circuit.nvars(), graded.circuit.gates(), outs));
    }

    // standalone Q circuit over x-vars plus the split blocks
    const std::uint32_t qvars = qs.nvars + std::uint32_t(d);
    CircuitBuilder b(qvars);
    std::vector<GateId> bind(qs.nvars);
    for (std::uint32_t v = 0; v < qs.nvars; ++v) bind[v] = b.input(v);
    std::vector<GateId> fmap = append_circuit(b, qs.fcoeffs, bind);
    auto uvar = [&](int j) { return b.input(qs.nvars + std::uint32_t(j)); };
    auto wvar = [&](int t) { return b.input(qs.nvars + std::uint32_t(d1 + t)); };
    std::vector<GateId> outs;
    for (int l = 0; l < d; ++l) {
        std::vector<GateId> terms;
        for (int j = std::max(0, l - d2); j <= std::min(l, d1); ++j) {
            int t = l - j;
            if (j == d1)
                terms.push_back(wvar(t));
            else if (t == d2)
                terms.push_back(uvar(j));
            else
                terms.push_back(b.mul(uvar(j), wvar(t)));
        }
        GateId fl = fmap[qs.fcoeffs.outputs()[std::size_t(l)]];
        terms.push_back(b.scaled(fl, -Fp::one()));
        outs.push_back(b.sum(terms));
    }
    qs.qcircuits = b.build(std::move(outs));
    return qs;
}

// ---------------------------------------------------------------------------
// Newton iteration state
// ---------------------------------------------------------------------------

/// The growing multi-output circuit of factor-coefficient approximations.
/// After construction the outputs are the seed constants (correct mod <x>);
/// each newton_step appends one copy of the quadratic part of the Q system
/// plus a linear layer, advancing the congruence by one ideal power. The
/// f-coefficient subcircuit is embedded once and shared by all steps.
struct LiftState {
    int k = 1; // outputs agree with the true coefficients mod <x>^k
    int d1 = 0, d2 = 0;
    std::uint32_t nvars = 0;
    std::uint32_t yvar = 0;
    CircuitBuilder builder{0};
    std::vector<GateId> approx;  // d1 g-side outputs then d2 h-side outputs
    std::vector<GateId> fouts;   // f_l gates (embedded fcoeffs outputs)
    std::vector<GateId> fneg;    // -f_l gates
    FpMatrix beta_gamma;         // rows of -A^{-1}: update constants
    std::vector<std::size_t> size_log;              // edge count per power, index k-1
    std::vector<std::vector<GateId>> history;       // approx outputs per power
    std::vector<std::pair<std::size_t, std::size_t>> step_ranges; // builder gate ranges per step

    int d() const { return d1 + d2; }
    Circuit approx_circuit() const { return builder.build(approx); }
};

/// Base state at k = 1: the approximations are the seed constants themselves.
inline LiftState lift_base(const QSystem& qs, const UniPoly& seedg, const UniPoly& seedh) {
    if (seedg.deg() != qs.d1 || seedh.deg() != qs.d2)
        fail(Errc::structural, "seed degrees do not match the Q system");
    if (!seedg.is_monic() || !seedh.is_monic())
        fail(Errc::domain, "lift seeds must be monic");

    FpMatrix a = jacobian_at_seed(seedg, seedh);
    auto inv = a.inverse();
    if (!inv) fail(Errc::internal, "seed Jacobian is singular; normalization should prevent this");

    LiftState st;
    st.d1 = qs.d1;
    st.d2 = qs.d2;
    st.nvars = qs.nvars;
    st.yvar = qs.yvar;
    st.builder = CircuitBuilder(qs.nvars);
    st.beta_gamma = FpMatrix(std::size_t(qs.d), std::size_t(qs.d));
    for (std::size_t i = 0; i < inv->rows(); ++i)
        for (std::size_t j = 0; j < inv->cols(); ++j) st.beta_gamma.at(i, j) = -inv->at(i, j);

    std::vector<GateId> bind(qs.nvars);
    for (std::uint32_t v = 0; v < qs.nvars; ++v) bind[v] = st.builder.input(v);
    std::vector<GateId> fmap = append_circuit(st.builder, qs.fcoeffs, bind);
    for (GateId o : qs.fcoeffs.outputs()) st.fouts.push_back(fmap[o]);
    for (GateId fo : st.fouts) st.fneg.push_back(st.builder.scaled(fo, -Fp::one()));

    for (int i = 0; i < qs.d1; ++i) st.approx.push_back(st.builder.constant(seedg[i]));
    for (int j = 0; j < qs.d2; ++j) st.approx.push_back(st.builder.constant(seedh[j]));
    st.size_log.push_back(st.builder.edge_count());
    st.history.push_back(st.approx);
    return st;
}

/// One Newton step: appends Q evaluated at the current approximations and the
/// beta/gamma linear layer, then moves the output designation up. Congruence
/// advances from mod <x>^k to mod <x>^{k+1}.
inline LiftState newton_step(LiftState st, const QSystem& qs) {
    CircuitBuilder& b = st.builder;
    const int d = qs.d, d1 = qs.d1, d2 = qs.d2;
    const std::size_t start = b.num_gates();

    std::vector<GateId> qvals(std::size_t(d), 0);
    for (int l = 0; l < d; ++l) {
        std::vector<GateId> terms;
        for (int j = std::max(0, l - d2); j <= std::min(l, d1); ++j) {
            int t = l - j;
            if (j == d1)
                terms.push_back(st.approx[std::size_t(d1 + t)]);
            else if (t == d2)
                terms.push_back(st.approx[std::size_t(j)]);
            else
                terms.push_back(b.mul(st.approx[std::size_t(j)], st.approx[std::size_t(d1 + t)]));
        }
        terms.push_back(st.fneg[std::size_t(l)]);
        qvals[std::size_t(l)] = b.sum(terms);
    }

    std::vector<GateId> next(std::size_t(d), 0);
    for (int i = 0; i < d; ++i) {
        std::vector<GateId> parts{st.approx[std::size_t(i)]};
        for (int l = 0; l < d; ++l) {
            Fp coeff = st.beta_gamma.at(std::size_t(i), std::size_t(l));
            if (coeff.is_zero()) continue;
            parts.push_back(b.scaled(qvals[std::size_t(l)], coeff));
        }
        next[std::size_t(i)] = b.sum(parts);
    }

    st.approx = std::move(next);
    st.k += 1;
    st.history.push_back(st.approx);
    st.step_ranges.push_back({start, b.num_gates()});
    st.size_log.push_back(b.edge_count());
    return st;
}

// ---------------------------------------------------------------------------
// Readout and verification
// ---------------------------------------------------------------------------

struct FactorPair {
    Circuit g;
    Circuit h;
    int d1 = 0;
    int d2 = 0;
};

/// Probabilistic check that f = g*h as polynomials; each trial has error at
/// most deg(f)/p.
inline bool verify_split(const Circuit& f, const Circuit& g, const Circuit& h, int trials,
                         Rng& rng) {
    if (trials < 1) fail(Errc::structural, "verify_split needs at least one trial");
    std::vector<Fp> point(f.nvars());
    for (int t = 0; t < trials; ++t) {
        for (auto& v : point) v = rng.field_element();
        if (f.eval(point)[0] != g.eval(point)[0] * h.eval(point)[0]) return false;
    }
    return true;
}

/// Drives a full lift: builds the Q system, iterates Newton steps to the
/// requested ideal power, verifies candidates cheaply through truncated-series
/// evaluation, and assembles factor circuits by the homogenization readout.
class LiftRun {
public:
    LiftRun(const Circuit& f, const UniPoly& seedg, const UniPoly& seedh, const Normalization& norm,
            int total_degree)
        : f_(f), norm_(norm), total_degree_(total_degree) {
        if (seedg.deg() < 1 || seedh.deg() < 1)
            fail(Errc::domain, "lift seeds must both have positive degree");
        fhat_ = norm.apply(f);
        const int d = seedg.deg() + seedh.deg();
        UniPoly image = univariate_image(fhat_, norm.yvar, std::max(total_degree, d));
        if (image.deg() != d || !(seedg * seedh == image))
            fail(Errc::structural, "seed split does not multiply to the univariate image");
        qs_ = build_Q(fhat_, norm.yvar, seedg.deg(), seedh.deg());
        state_ = lift_base(qs_, seedg, seedh);
        seedg_ = seedg;
        seedh_ = seedh;
    }

    const QSystem& q_system() const { return qs_; }
    const LiftState& state() const { return state_; }
    const Circuit& fhat() const { return fhat_; }
    int target_power() const { return total_degree_ + 1; }

    void step() { state_ = newton_step(std::move(state_), qs_); }

    void run_to_target() {
        while (state_.k < target_power()) step();
    }

    /// Values of the truncated factors at a point w in normalized coordinates,
    /// computed by evaluating the approximation circuit over F[eps]/<eps^{D+1}>
    /// at eps-scaled x coordinates. Identical to evaluating the homogenization
    /// readout but without materializing it.
    std::pair<Fp, Fp> factor_values_at(std::span<const Fp> w) const {
        const std::size_t len = std::size_t(total_degree_) + 1;
        std::vector<TruncSeries> point(state_.nvars, TruncSeries(len, Fp::zero()));
        for (std::uint32_t v = 0; v < state_.nvars; ++v) {
            if (v == state_.yvar) continue;
            TruncSeries s(len, Fp::zero());
            if (len > 1) s[1] = w[v];
            point[v] = s;
        }
        std::vector<TruncSeries> outs = eval_series(cached_approx(), point, len);
        Fp y = w[state_.yvar];
        Fp gval = y.pow(std::uint64_t(state_.d1));
        for (int i = 0; i < state_.d1; ++i)
            gval += outs[std::size_t(i)].sum_of_coefficients() * y.pow(std::uint64_t(i));
        Fp hval = y.pow(std::uint64_t(state_.d2));
        for (int j = 0; j < state_.d2; ++j)
            hval += outs[std::size_t(state_.d1 + j)].sum_of_coefficients() * y.pow(std::uint64_t(j));
        return {gval, hval};
    }

    /// Probabilistic split check in the original coordinates; stops on the
    /// first failing trial.
    bool verify(Rng& rng, int trials) const {
        std::vector<Fp> v(f_.nvars());
        AffineMap inv = norm_.inverse_map();
        for (int t = 0; t < trials; ++t) {
            for (auto& c : v) c = rng.field_element();
            std::vector<Fp> w = apply_affine(inv, v);
            auto [gval, hval] = factor_values_at(w);
            if (f_.eval(v)[0] != norm_.lead_scale * gval * hval) return false;
        }
        return true;
    }

    /// Dense truncations of the approximation outputs mod <x>^K, replaying the
    /// step gates over precomputed dense f-coefficients (fast path: the
    /// f-subcircuit is not expanded gate by gate). `at_k` selects the outputs
    /// as of an earlier power for the ladder checks; 0 means the current one.
    std::vector<DensePoly> dense_outputs(int power, std::span<const DensePoly> fdense,
                                         int at_k = 0) const {
        if (int(fdense.size()) != qs_.d)
            fail(Errc::structural, "dense replay needs all f coefficients");
        if (at_k == 0) at_k = state_.k;
        if (at_k < 1 || at_k > state_.k) fail(Errc::structural, "history power out of range");
        const std::uint32_t mask = x_mask();
        const auto& gates = state_.builder.gates();
        std::vector<std::optional<DensePoly>> val(gates.size());
        const int nv = int(state_.nvars);
        // values known without walking the f-subcircuit
        for (std::size_t i = 0; i < gates.size(); ++i) {
            const Gate& g = gates[i];
            if (g.kind == GateKind::Const) val[i] = DensePoly::constant(nv, g.c);
            else if (g.kind == GateKind::Input)
                val[i] = DensePoly::variable(nv, int(g.a)).truncate_mod_ideal(mask, power);
        }
        for (int l = 0; l < qs_.d; ++l) {
            DensePoly fl = fdense[std::size_t(l)].truncate_mod_ideal(mask, power);
            val[state_.fouts[std::size_t(l)]] = fl;
            val[state_.fneg[std::size_t(l)]] = fl.scaled(-Fp::one());
        }
        const std::size_t steps = std::size_t(at_k - 1);
        for (std::size_t s = 0; s < steps; ++s) {
            const auto& [lo, hi] = state_.step_ranges[s];
            for (std::size_t i = lo; i < hi; ++i) {
                const Gate& g = gates[i];
                if (!g.is_binary()) continue; // consts already seeded
                if (!val[g.a] || !val[g.b])
                    fail(Errc::internal, "dense replay hit an unexpanded operand");
                val[i] = g.kind == GateKind::Add
                             ? (*val[g.a] + *val[g.b]).truncate_mod_ideal(mask, power)
                             : DensePoly::mul_truncated(*val[g.a], *val[g.b], mask, power);
            }
        }
        std::vector<DensePoly> out;
        for (GateId o : state_.history[std::size_t(at_k - 1)]) {
            if (!val[o]) fail(Errc::internal, "dense replay missing an output value");
            out.push_back(*val[o]);
        }
        return out;
    }

    /// Builds the truncated coefficient circuit for a subset of the
    /// approximation outputs: homogenization to degree trunc_deg, then the
    /// all-ones (scaled) linear combination per output.
    Circuit truncated_coefficients(std::span<const std::size_t> idxs, int trunc_deg,
                                   Fp scale) const {
        std::vector<GateId> outs;
        for (std::size_t i : idxs) outs.push_back(state_.approx[i]);
        Circuit sub = state_.builder.build(outs);
        GradedCircuit graded = homogeneous_components(sub, trunc_deg);
        FpMatrix m(idxs.size(), graded.circuit.num_outputs());
        for (std::size_t r = 0; r < idxs.size(); ++r)
            for (int j = 0; j <= trunc_deg; ++j) m.at(r, graded.index(r, j)) = scale;
        return linear_combination(graded.circuit, m, {});
    }

    /// Factor readout: truncate every coefficient to degree <= total_degree,
    /// assemble g = y^{d1} + sum g_i y^i (likewise h), then undo the
    /// normalization, folding the leading scale into g.
    FactorPair assemble() const {
        const int d1 = state_.d1, d2 = state_.d2;
        std::vector<std::size_t> all(std::size_t(d1 + d2));
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        Circuit coeffs = truncated_coefficients(all, total_degree_, Fp::one());

        CircuitBuilder b(state_.nvars);
        std::vector<GateId> bind(state_.nvars);
        for (std::uint32_t v = 0; v < state_.nvars; ++v) bind[v] = b.input(v);
        std::vector<GateId> map = append_circuit(b, coeffs, bind);
        GateId y = b.input(state_.yvar);
        std::vector<GateId> ypow(std::size_t(std::max(d1, d2)) + 1);
        ypow[0] = b.constant(Fp::one());
        for (std::size_t e = 1; e < ypow.size(); ++e)
            ypow[e] = (e == 1) ? y : b.mul(ypow[e - 1], y);

        auto assemble_side = [&](int offset, int deg) {
            std::vector<GateId> terms;
            terms.push_back(ypow[std::size_t(deg)]);
            for (int i = 0; i < deg; ++i) {
                GateId ci = map[coeffs.outputs()[std::size_t(offset + i)]];
                terms.push_back(i == 0 ? ci : b.mul(ci, ypow[std::size_t(i)]));
            }
            return b.sum(terms);
        };
        GateId gout = assemble_side(0, d1);
        GateId hout = assemble_side(d1, d2);
        Circuit both = b.build({gout, hout});

        Circuit gnorm = prune(Circuit(both.nvars(), both.gates(), {both.outputs()[0]}));
        Circuit hnorm = prune(Circuit(both.nvars(), both.gates(), {both.outputs()[1]}));

        AffineMap inv = norm_.inverse_map();
        Circuit g = substitute_affine(gnorm, inv);
        if (norm_.lead_scale != Fp::one()) {
            FpMatrix m(1, 1);
            m.at(0, 0) = norm_.lead_scale;
            g = linear_combination(g, m, {});
        }
        Circuit h = substitute_affine(hnorm, inv);
        return FactorPair{prune(g), prune(h), d1, d2};
    }

    std::uint32_t x_mask() const {
        std::uint32_t mask = 0;
        for (std::uint32_t v = 0; v < state_.nvars; ++v)
            if (v != state_.yvar) mask |= (1u << v);
        return mask;
    }

private:
    const Circuit& cached_approx() const {
        if (!approx_cache_ || approx_cache_k_ != state_.k) {
            approx_cache_ = state_.approx_circuit();
            approx_cache_k_ = state_.k;
        }
        return *approx_cache_;
    }

    Circuit f_;
    Normalization norm_;
    int total_degree_;
    Circuit fhat_;
    QSystem qs_;
    LiftState state_;
    UniPoly seedg_, seedh_;
    mutable std::optional<Circuit> approx_cache_;
    mutable int approx_cache_k_ = -1;
};

/// Full treatment of one coprime split: iterate to power d+1, verify,
/// read out circuits for both factors and undo the normalization. Throws
/// not_a_true_split when the probabilistic check rejects the candidate.
inline FactorPair lift_coprime_split(const Circuit& f, const UniPoly& seedg, const UniPoly& seedh,
                                     const Normalization& norm, int total_degree, Rng& rng,
                                     int trials = 20) {
    LiftRun run(f, seedg, seedh, norm, total_degree);
    run.run_to_target();
    if (!run.verify(rng, trials))
        fail(Errc::not_a_true_split, "lifted candidate failed the split identity test");
    return run.assemble();
}

} // namespace factorforge
