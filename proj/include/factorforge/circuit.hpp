#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "error.hpp"
#include "fp.hpp"

namespace factorforge {

using GateId = std::uint32_t;

enum class GateKind : std::uint8_t { Input, Const, Add, Mul };

/// One node of the straight-line program. For Input gates `a` is the variable
/// index; for Const gates `c` holds the value; Add/Mul use `a` and `b` as
/// operand gate ids, which always refer to earlier gates.
struct Gate {
    GateKind kind;
    GateId a = 0;
    GateId b = 0;
    Fp c;

    static Gate input(std::uint32_t var) { return {GateKind::Input, var, 0, Fp()}; }
    static Gate constant(Fp v) { return {GateKind::Const, 0, 0, v}; }
    static Gate add(GateId x, GateId y) { return {GateKind::Add, x, y, Fp()}; }
    static Gate mul(GateId x, GateId y) { return {GateKind::Mul, x, y, Fp()}; }

    bool is_binary() const { return kind == GateKind::Add || kind == GateKind::Mul; }
};

/// Arithmetic circuit: a DAG of gates in topological order plus designated
/// output gates. Immutable once built; the transformation passes all return
/// fresh circuits. Size is the number of edges, i.e. twice the number of
/// binary gates.
class Circuit {
public:
    Circuit() = default;
    Circuit(std::uint32_t nvars, std::vector<Gate> gates, std::vector<GateId> outputs)
        : nvars_(nvars), gates_(std::move(gates)), outputs_(std::move(outputs)) {
        validate();
    }

    std::uint32_t nvars() const { return nvars_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const std::vector<GateId>& outputs() const { return outputs_; }
    std::size_t num_outputs() const { return outputs_.size(); }

    std::size_t num_binary_gates() const {
        std::size_t n = 0;
        for (const auto& g : gates_) n += g.is_binary() ? 1 : 0;
        return n;
    }

    /// Edge count, the size measure used throughout.
    std::size_t size() const { return 2 * num_binary_gates(); }

    std::vector<Fp> eval(std::span<const Fp> point) const {
        if (point.size() != nvars_)
            fail(Errc::structural, "evaluation point has wrong arity");
        std::vector<Fp> val(gates_.size());
        for (std::size_t i = 0; i < gates_.size(); ++i) {
            const Gate& g = gates_[i];
            switch (g.kind) {
                case GateKind::Input: val[i] = point[g.a]; break;
                case GateKind::Const: val[i] = g.c; break;
                case GateKind::Add: val[i] = val[g.a] + val[g.b]; break;
                case GateKind::Mul: val[i] = val[g.a] * val[g.b]; break;
            }
        }
        std::vector<Fp> out;
        out.reserve(outputs_.size());
        for (GateId o : outputs_) out.push_back(val[o]);
        return out;
    }

    /// Gates reachable from the outputs (the cone actually computed).
    std::vector<bool> reachable() const {
        std::vector<bool> mark(gates_.size(), false);
        for (GateId o : outputs_) mark[o] = true;
        for (std::size_t i = gates_.size(); i-- > 0;) {
            if (!mark[i]) continue;
            const Gate& g = gates_[i];
            if (g.is_binary()) { mark[g.a] = true; mark[g.b] = true; }
        }
        return mark;
    }

private:
    void validate() const {
        for (std::size_t i = 0; i < gates_.size(); ++i) {
            const Gate& g = gates_[i];
            if (g.kind == GateKind::Input && g.a >= nvars_)
                fail(Errc::structural, "input gate references unknown variable");
            if (g.is_binary() && (g.a >= i || g.b >= i))
                fail(Errc::structural, "gate operand does not precede its use");
        }
        for (GateId o : outputs_)
            if (o >= gates_.size()) fail(Errc::structural, "output references unknown gate");
    }

    std::uint32_t nvars_ = 0;
    std::vector<Gate> gates_;
    std::vector<GateId> outputs_;
};

/// Append-only builder. Input gates are deduplicated per variable and constant
/// gates per value, which keeps the transformation passes from spraying
/// duplicates; binary gates are emitted as requested.
class CircuitBuilder {
public:
    explicit CircuitBuilder(std::uint32_t nvars) : nvars_(nvars) {}

    GateId input(std::uint32_t var) {
        if (var >= nvars_) fail(Errc::structural, "input variable out of range");
        auto it = inputs_.find(var);
        if (it != inputs_.end()) return it->second;
        GateId id = push(Gate::input(var));
        inputs_.emplace(var, id);
        return id;
    }

    GateId constant(Fp v) {
        auto it = consts_.find(v.value());
        if (it != consts_.end()) return it->second;
        GateId id = push(Gate::constant(v));
        consts_.emplace(v.value(), id);
        return id;
    }

    GateId add(GateId x, GateId y) {
        check(x); check(y);
        return push(Gate::add(x, y));
    }

    GateId mul(GateId x, GateId y) {
        check(x); check(y);
        return push(Gate::mul(x, y));
    }

    /// x - y, via a single scaling gate for the negation.
    GateId sub(GateId x, GateId y) { return add(x, mul(constant(-Fp::one()), y)); }

    /// c * x, folding the trivial scalars.
    GateId scaled(GateId x, Fp c) {
        if (c == Fp::one()) return x;
        if (c.is_zero()) return constant(Fp::zero());
        return mul(constant(c), x);
    }

    /// Balanced-free simple ladder sum; empty input encodes the zero output.
    GateId sum(std::span<const GateId> ids) {
        if (ids.empty()) return constant(Fp::zero());
        GateId acc = ids[0];
        for (std::size_t i = 1; i < ids.size(); ++i) acc = add(acc, ids[i]);
        return acc;
    }

    /// x^e by square and multiply; e >= 1.
    GateId power(GateId x, std::uint64_t e) {
        if (e == 0) fail(Errc::structural, "power() expects a positive exponent");
        check(x);
        GateId acc = 0;
        bool have = false;
        GateId sq = x;
        for (std::uint64_t bits = e; bits; bits >>= 1) {
            if (bits & 1) {
                acc = have ? mul(acc, sq) : sq;
                have = true;
            }
            if (bits >> 1) sq = mul(sq, sq);
        }
        return acc;
    }

    std::size_t num_gates() const { return gates_.size(); }
    const std::vector<Gate>& gates() const { return gates_; }

    std::size_t edge_count() const {
        std::size_t n = 0;
        for (const auto& g : gates_) n += g.is_binary() ? 2 : 0;
        return n;
    }

    Circuit build(std::vector<GateId> outputs) const {
        return Circuit(nvars_, gates_, std::move(outputs));
    }

private:
    GateId push(Gate g) {
        gates_.push_back(g);
        return GateId(gates_.size() - 1);
    }
    void check(GateId id) const {
        if (id >= gates_.size()) fail(Errc::structural, "builder operand not yet defined");
    }

    std::uint32_t nvars_;
    std::vector<Gate> gates_;
    std::map<std::uint32_t, GateId> inputs_;
    std::map<std::uint64_t, GateId> consts_;
};

/// Evaluates a multi-output circuit at a point.
inline std::vector<Fp> eval(const Circuit& c, std::span<const Fp> point) { return c.eval(point); }

} // namespace factorforge
