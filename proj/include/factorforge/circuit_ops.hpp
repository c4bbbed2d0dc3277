#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "circuit.hpp"
#include "densepoly.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "rng.hpp"
#include "unipoly.hpp"

namespace factorforge {

/// Copies `src` into `dst`, wiring each input variable v of `src` to the gate
/// `var_gates[v]` already present in `dst`. Returns the id map (old gate id to
/// new gate id), so callers can locate the copied outputs.
inline std::vector<GateId> append_circuit(CircuitBuilder& dst, const Circuit& src,
                                          std::span<const GateId> var_gates) {
    if (var_gates.size() != src.nvars())
        fail(Errc::structural, "append_circuit variable binding arity mismatch");
    std::vector<GateId> map(src.gates().size());
    for (std::size_t i = 0; i < src.gates().size(); ++i) {
        const Gate& g = src.gates()[i];
        switch (g.kind) {
            case GateKind::Input: map[i] = var_gates[g.a]; break;
            case GateKind::Const: map[i] = dst.constant(g.c); break;
            case GateKind::Add: map[i] = dst.add(map[g.a], map[g.b]); break;
            case GateKind::Mul: map[i] = dst.mul(map[g.a], map[g.b]); break;
        }
    }
    return map;
}

/// Drops gates not reachable from the outputs and renumbers.
inline Circuit prune(const Circuit& c) {
    std::vector<bool> keep = c.reachable();
    std::vector<GateId> remap(c.gates().size());
    std::vector<Gate> gates;
    for (std::size_t i = 0; i < c.gates().size(); ++i) {
        if (!keep[i]) continue;
        Gate g = c.gates()[i];
        if (g.is_binary()) { g.a = remap[g.a]; g.b = remap[g.b]; }
        remap[i] = GateId(gates.size());
        gates.push_back(g);
    }
    std::vector<GateId> outs;
    outs.reserve(c.outputs().size());
    for (GateId o : c.outputs()) outs.push_back(remap[o]);
    return Circuit(c.nvars(), std::move(gates), std::move(outs));
}

/// Narrows the variable set after a prune; every surviving input gate must
/// reference a variable below new_nvars.
inline Circuit restrict_nvars(const Circuit& c, std::uint32_t new_nvars) {
    Circuit p = prune(c);
    for (const Gate& g : p.gates())
        if (g.kind == GateKind::Input && g.a >= new_nvars)
            fail(Errc::structural, "circuit still depends on a variable being dropped");
    return Circuit(new_nvars, p.gates(), p.outputs());
}

// ---------------------------------------------------------------------------
// Affine substitution
// ---------------------------------------------------------------------------

/// constant + sum of coeff * variable.
struct AffineExpr {
    Fp constant;
    std::vector<std::pair<std::uint32_t, Fp>> terms;

    static AffineExpr var(std::uint32_t v) { return {Fp::zero(), {{v, Fp::one()}}}; }
};

struct AffineMap {
    std::uint32_t out_nvars = 0;
    std::vector<AffineExpr> exprs; // one per input variable

    static AffineMap identity(std::uint32_t nvars) {
        AffineMap m;
        m.out_nvars = nvars;
        for (std::uint32_t v = 0; v < nvars; ++v) m.exprs.push_back(AffineExpr::var(v));
        return m;
    }
};

/// Returns a circuit computing C composed with the map (each variable replaced
/// by its affine expression). For the translation and shift maps used here the
/// growth is at most 3 gates per substituted variable.
inline Circuit substitute_affine(const Circuit& c, const AffineMap& map) {
    if (map.exprs.size() != c.nvars())
        fail(Errc::structural, "affine map arity does not match the circuit");
    for (const auto& e : map.exprs)
        for (const auto& [v, coeff] : e.terms)
            if (v >= map.out_nvars) fail(Errc::structural, "affine expression references unknown variable");

    CircuitBuilder b(map.out_nvars);
    std::vector<GateId> bound(c.nvars());
    std::vector<bool> used(c.nvars(), false);
    for (const Gate& g : c.gates())
        if (g.kind == GateKind::Input) used[g.a] = true;
    for (std::uint32_t v = 0; v < c.nvars(); ++v) {
        if (!used[v]) { bound[v] = 0; continue; }
        const AffineExpr& e = map.exprs[v];
        std::vector<GateId> parts;
        for (const auto& [src, coeff] : e.terms) {
            if (coeff.is_zero()) continue;
            parts.push_back(b.scaled(b.input(src), coeff));
        }
        if (!e.constant.is_zero() || parts.empty()) parts.push_back(b.constant(e.constant));
        bound[v] = b.sum(parts);
    }
    std::vector<GateId> map_ids = append_circuit(b, c, bound);
    std::vector<GateId> outs;
    for (GateId o : c.outputs()) outs.push_back(map_ids[o]);
    return b.build(std::move(outs));
}

/// Applies an affine map to a point: the value of each expression at `point`.
inline std::vector<Fp> apply_affine(const AffineMap& map, std::span<const Fp> point) {
    std::vector<Fp> out(map.exprs.size());
    for (std::size_t v = 0; v < map.exprs.size(); ++v) {
        Fp acc = map.exprs[v].constant;
        for (const auto& [src, coeff] : map.exprs[v].terms) acc += coeff * point[src];
        out[v] = acc;
    }
    return out;
}

/// Dense-side composition with an affine map (oracle counterpart of
/// substitute_affine).
inline DensePoly substitute_affine_dense(const DensePoly& p, const AffineMap& map) {
    if (int(map.exprs.size()) != p.nvars())
        fail(Errc::structural, "affine map arity does not match the polynomial");
    std::vector<DensePoly> args;
    args.reserve(map.exprs.size());
    for (const auto& e : map.exprs) {
        DensePoly a = DensePoly::constant(int(map.out_nvars), e.constant);
        for (const auto& [v, coeff] : e.terms)
            a = a + DensePoly::variable(int(map.out_nvars), int(v)).scaled(coeff);
        args.push_back(std::move(a));
    }
    return p.compose(args);
}

// ---------------------------------------------------------------------------
// Graded decomposition (homogeneous components / coefficient extraction)
// ---------------------------------------------------------------------------

/// Result of a graded-decomposition pass: for original output t and degree j,
/// the new output at `index(t, j)` computes the weight-degree-j component.
struct GradedCircuit {
    Circuit circuit;
    int max_degree = 0;
    std::size_t original_outputs = 0;

    std::size_t index(std::size_t t, int j) const {
        return t * std::size_t(max_degree + 1) + std::size_t(j);
    }
};

namespace detail {

// Symbolic per-degree slot used while grading: folded zero / constant, or a
// materialized gate. Keeps the pass from emitting gates for components that
// are identically zero, which is what makes the size bounds comfortable.
struct Slot {
    enum class Tag : std::uint8_t { Zero, Const, Gate } tag = Tag::Zero;
    Fp c;
    GateId id = 0;

    static Slot zero() { return {}; }
    static Slot konst(Fp v) { return v.is_zero() ? Slot{} : Slot{Tag::Const, v, 0}; }
    static Slot gate(GateId g) { return {Tag::Gate, Fp(), g}; }
    bool is_zero() const { return tag == Tag::Zero; }
};

inline GateId materialize(CircuitBuilder& b, const Slot& s) {
    switch (s.tag) {
        case Slot::Tag::Zero: return b.constant(Fp::zero());
        case Slot::Tag::Const: return b.constant(s.c);
        default: return s.id;
    }
}

inline Slot slot_add(CircuitBuilder& b, const Slot& x, const Slot& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.tag == Slot::Tag::Const && y.tag == Slot::Tag::Const) return Slot::konst(x.c + y.c);
    return Slot::gate(b.add(materialize(b, x), materialize(b, y)));
}

inline Slot slot_mul(CircuitBuilder& b, const Slot& x, const Slot& y) {
    if (x.is_zero() || y.is_zero()) return Slot::zero();
    if (x.tag == Slot::Tag::Const && y.tag == Slot::Tag::Const) return Slot::konst(x.c * y.c);
    if (x.tag == Slot::Tag::Const) return Slot::gate(b.scaled(y.id, x.c));
    if (y.tag == Slot::Tag::Const) return Slot::gate(b.scaled(x.id, y.c));
    return Slot::gate(b.mul(x.id, y.id));
}

} // namespace detail

/// The generic grading pass behind homogenization and coefficient extraction.
/// Each variable carries weight 0 or 1; the output circuit computes, per
/// original output, its weighted-degree components 0..k. With `strip` set the
/// weight-1 variables are replaced by 1 in the components (coefficient
/// semantics); otherwise they are kept (homogeneous-component semantics).
inline GradedCircuit graded_components(const Circuit& c, std::span<const int> weights, int k,
                                       bool strip) {
    if (k < 0) fail(Errc::structural, "component degree bound must be nonnegative");
    if (weights.size() != c.nvars()) fail(Errc::structural, "weight vector arity mismatch");

    using detail::Slot;
    CircuitBuilder b(c.nvars());
    std::vector<bool> need = c.reachable();
    const int width = k + 1;
    std::vector<std::vector<Slot>> comp(c.gates().size());

    for (std::size_t i = 0; i < c.gates().size(); ++i) {
        if (!need[i]) continue;
        const Gate& g = c.gates()[i];
        std::vector<Slot> slots(width);
        switch (g.kind) {
            case GateKind::Input:
                if (weights[g.a] == 0) {
                    slots[0] = Slot::gate(b.input(g.a));
                } else if (k >= 1) {
                    slots[1] = strip ? Slot::konst(Fp::one()) : Slot::gate(b.input(g.a));
                }
                break;
            case GateKind::Const:
                slots[0] = Slot::konst(g.c);
                break;
            case GateKind::Add:
                for (int j = 0; j < width; ++j)
                    slots[j] = detail::slot_add(b, comp[g.a][j], comp[g.b][j]);
                break;
            case GateKind::Mul:
                for (int j = 0; j < width; ++j) {
                    Slot acc = Slot::zero();
                    for (int t = 0; t <= j; ++t)
                        acc = detail::slot_add(b, acc, detail::slot_mul(b, comp[g.a][t], comp[g.b][j - t]));
                    slots[j] = acc;
                }
                break;
        }
        comp[i] = std::move(slots);
    }

    std::vector<GateId> outs;
    outs.reserve(c.num_outputs() * std::size_t(width));
    for (GateId o : c.outputs())
        for (int j = 0; j < width; ++j) outs.push_back(detail::materialize(b, comp[o][j]));

    GradedCircuit out;
    out.circuit = b.build(std::move(outs));
    out.max_degree = k;
    out.original_outputs = c.num_outputs();
    return out;
}

/// Homogeneous components of degrees 0..k of every output (all variables
/// weighted 1). Size is bounded by 8(k+1)^2 * size(C) + 4(k+1) * nvars.
inline GradedCircuit homogeneous_components(const Circuit& c, int k) {
    std::vector<int> w(c.nvars(), 1);
    return graded_components(c, w, k, /*strip=*/false);
}

/// Coefficients of yvar^0..yvar^d of every output, each free of yvar.
/// Realized by the same weighted grading (weight 1 on yvar, 0 elsewhere);
/// size is bounded by 8(d+1)^2 * size(C). Terms of yvar-degree above d are
/// dropped; callers check the degree bound by oracle where it matters.
inline GradedCircuit y_coefficients(const Circuit& c, std::uint32_t yvar, int d) {
    if (yvar >= c.nvars()) fail(Errc::structural, "coefficient variable out of range");
    std::vector<int> w(c.nvars(), 0);
    w[yvar] = 1;
    return graded_components(c, w, d, /*strip=*/true);
}

// ---------------------------------------------------------------------------
// Linear combinations of outputs
// ---------------------------------------------------------------------------

/// New circuit whose outputs are M * outputs(C) + offsets. Grows by at most
/// 4 * rows * cols gates on top of a copy of C.
inline Circuit linear_combination(const Circuit& c, const FpMatrix& m, std::span<const Fp> offsets) {
    if (m.cols() != c.num_outputs())
        fail(Errc::structural, "linear combination column count mismatch");
    if (!offsets.empty() && offsets.size() != m.rows())
        fail(Errc::structural, "offset vector length mismatch");

    CircuitBuilder b(c.nvars());
    std::vector<GateId> vars(c.nvars());
    for (std::uint32_t v = 0; v < c.nvars(); ++v) vars[v] = 0; // bound lazily below
    std::vector<bool> used(c.nvars(), false);
    for (const Gate& g : c.gates())
        if (g.kind == GateKind::Input) used[g.a] = true;
    for (std::uint32_t v = 0; v < c.nvars(); ++v)
        if (used[v]) vars[v] = b.input(v);
    std::vector<GateId> map = append_circuit(b, c, vars);

    std::vector<GateId> outs;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::vector<GateId> parts;
        for (std::size_t col = 0; col < m.cols(); ++col) {
            Fp coeff = m.at(r, col);
            if (coeff.is_zero()) continue;
            parts.push_back(b.scaled(map[c.outputs()[col]], coeff));
        }
        Fp off = offsets.empty() ? Fp::zero() : offsets[r];
        if (!off.is_zero()) parts.push_back(b.constant(off));
        outs.push_back(b.sum(parts));
    }
    return b.build(std::move(outs));
}

// ---------------------------------------------------------------------------
// Dense-to-circuit synthesis
// ---------------------------------------------------------------------------

namespace detail {

inline GateId emit_dense(CircuitBuilder& b, const DensePoly& p) {
    if (p.is_zero()) return b.constant(Fp::zero());
    if (p.is_constant()) return b.constant(p.constant_term());
    int var = -1;
    for (int v = p.nvars() - 1; v >= 0; --v)
        if (p.degree_in(v) > 0) { var = v; break; }
    int dv = p.degree_in(var);
    // Horner in the chosen variable, skipping absent powers.
    std::vector<std::pair<int, GateId>> coeffs;
    for (int j = 0; j <= dv; ++j) {
        DensePoly cj = p.coefficient_of_power(var, j);
        if (!cj.is_zero()) coeffs.push_back({j, emit_dense(b, cj)});
    }
    GateId x = b.input(std::uint32_t(var));
    GateId acc = coeffs.back().second;
    int cur = coeffs.back().first;
    for (int idx = int(coeffs.size()) - 2; idx >= 0; --idx) {
        int gap = cur - coeffs[idx].first;
        acc = b.mul(acc, gap == 1 ? x : b.power(x, std::uint64_t(gap)));
        acc = b.add(acc, coeffs[idx].second);
        cur = coeffs[idx].first;
    }
    if (cur > 0) acc = b.mul(acc, cur == 1 ? x : b.power(x, std::uint64_t(cur)));
    return acc;
}

} // namespace detail

/// Compact circuit computing the given dense polynomials (nested Horner).
inline Circuit dense_to_circuit(std::span<const DensePoly> polys, std::uint32_t nvars) {
    CircuitBuilder b(nvars);
    std::vector<GateId> outs;
    for (const auto& p : polys) {
        if (p.nvars() > int(nvars)) fail(Errc::structural, "dense polynomial arity exceeds circuit arity");
        outs.push_back(detail::emit_dense(b, p));
    }
    return b.build(std::move(outs));
}

inline Circuit dense_to_circuit(const DensePoly& p, std::uint32_t nvars) {
    return dense_to_circuit(std::span<const DensePoly>(&p, 1), nvars);
}

// ---------------------------------------------------------------------------
// Evaluation-based probes
// ---------------------------------------------------------------------------

/// Total degree of the polynomial max'd over outputs, by restricting to random
/// lines and interpolating. Correct with probability 1 - O(trials * cap / p);
/// returns -1 for the zero polynomial. `cap` bounds the degree this probe can
/// certify, so inputs of larger degree are reported as a capacity error.
inline int degree_probe(const Circuit& c, Rng& rng, int cap, int trials = 4) {
    int best = -1;
    std::vector<Fp> ts(std::size_t(cap) + 2);
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = Fp(std::uint64_t(i));
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<Fp> base(c.nvars()), dir(c.nvars());
        for (auto& v : base) v = rng.field_element();
        for (auto& v : dir) v = rng.nonzero_field_element();
        std::vector<std::vector<Fp>> samples;
        samples.reserve(ts.size());
        std::vector<Fp> point(c.nvars());
        for (Fp t : ts) {
            for (std::size_t v = 0; v < point.size(); ++v) point[v] = base[v] + t * dir[v];
            samples.push_back(c.eval(point));
        }
        for (std::size_t o = 0; o < c.num_outputs(); ++o) {
            std::vector<Fp> ys(ts.size());
            for (std::size_t i = 0; i < ts.size(); ++i) ys[i] = samples[i][o];
            UniPoly q = uni_interpolate(ts, ys);
            if (q.deg() > cap)
                fail(Errc::capacity, "degree probe exceeded the configured cap");
            best = std::max(best, q.deg());
        }
    }
    return best;
}

/// The univariate restriction y -> C(0, ..., 0, y, 0, ..., 0) recovered by
/// interpolation; deg_bound must dominate the true degree in yvar.
inline UniPoly univariate_image(const Circuit& c, std::uint32_t yvar, int deg_bound,
                                std::size_t output = 0) {
    std::vector<Fp> xs(std::size_t(deg_bound) + 1), ys(xs.size());
    std::vector<Fp> point(c.nvars(), Fp::zero());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = Fp(std::uint64_t(i));
        point[yvar] = xs[i];
        ys[i] = c.eval(point)[output];
    }
    return uni_interpolate(xs, ys);
}

/// Probabilistic check that two circuits compute the same polynomial.
inline bool pit_equal(const Circuit& a, const Circuit& b, Rng& rng, int trials) {
    if (a.nvars() != b.nvars() || a.num_outputs() != b.num_outputs())
        return false;
    std::vector<Fp> point(a.nvars());
    for (int t = 0; t < trials; ++t) {
        for (auto& v : point) v = rng.field_element();
        if (a.eval(point) != b.eval(point)) return false;
    }
    return true;
}

} // namespace factorforge
