#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "circuit_expand.hpp"
#include "circuit_ops.hpp"
#include "error.hpp"
#include "lift.hpp"
#include "purepower.hpp"
#include "rng.hpp"
#include "seed.hpp"
#include "slp_io.hpp"
#include "unipoly.hpp"

namespace factorforge {

struct FactorConfig {
    std::uint64_t rng_seed = 0;
    int degree_cap = 16;
    int trials = 20;
    int budget = 4096;  // recombination candidates per round
    int max_rounds = 8; // re-normalization rounds
};

struct FactorEntry {
    Circuit circuit;
    int multiplicity = 1;
    bool certified_irreducible = false;
    std::size_t size = 0;
};

struct LiftReport {
    std::vector<std::size_t> size_log; // edge counts per ideal power
    int d1 = 0, d2 = 0;
};

struct FactorStats {
    std::uint64_t prime = 0;
    std::uint64_t rng_seed = 0;
    std::uint32_t n = 0;
    int d = 0;
    std::size_t input_size = 0;
    int retries = 0; // extra normalization attempts, rejected candidates, re-rounds
    int lift_count = 0;
    int newton_steps_total = 0;
    std::vector<LiftReport> lifts; // one per verified lift
};

struct FactorizationResult {
    Fp scale = Fp::one();
    std::vector<FactorEntry> factors;
    bool has_residual = false;
    FactorStats stats;
};

// ---------------------------------------------------------------------------
// Recombination search
// ---------------------------------------------------------------------------

namespace detail {

inline UniPoly subset_product(const std::vector<std::pair<UniPoly, int>>& factors,
                              std::uint64_t mask) {
    UniPoly acc = UniPoly::constant(Fp::one());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (!(mask >> i & 1)) continue;
        for (int m = 0; m < factors[i].second; ++m) acc = acc * factors[i].first;
    }
    return acc;
}

inline int subset_degree(const std::vector<std::pair<UniPoly, int>>& factors, std::uint64_t mask) {
    int d = 0;
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (mask >> i & 1) d += factors[i].first.deg() * factors[i].second;
    return d;
}

/// Proper nonempty subsets up to complement symmetry, ordered by (image degree
/// of the kept side, mask value): small sides first, deterministic.
inline std::vector<std::uint64_t> candidate_masks(
    const std::vector<std::pair<UniPoly, int>>& factors) {
    const std::size_t t = factors.size();
    const std::uint64_t full = (t >= 64) ? ~0ull : ((1ull << t) - 1);
    std::vector<std::pair<std::pair<int, std::uint64_t>, std::uint64_t>> keyed;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        std::uint64_t comp = full & ~mask;
        int dm = subset_degree(factors, mask);
        int dc = subset_degree(factors, comp);
        std::uint64_t canon = (dm < dc || (dm == dc && mask <= comp)) ? mask : comp;
        if (canon != mask) continue; // the complement pass will emit it
        keyed.push_back({{dm, mask}, mask});
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::uint64_t> out;
    out.reserve(keyed.size());
    for (auto& [k, m] : keyed) out.push_back(m);
    return out;
}

} // namespace detail

/// A verified bipartition of the seed factors together with the lift that
/// certified it.
struct Recombination {
    std::vector<int> subset; // indices of the g-side seed factors
    UniPoly seedg, seedh;
    LiftRun run;
};

/// Enumerates multiplicity-respecting seed subsets (each irreducible travels
/// with its full multiplicity) ordered by image degree, lifts each candidate
/// and returns the first one that verifies; nullopt when the budget runs out
/// or everything fails. `skip` masks are candidates the caller already tried.
inline std::optional<Recombination> recombination_search(
    const std::vector<std::pair<UniPoly, int>>& seedfactors, const Circuit& f,
    const Normalization& norm, int budget, int total_degree, Rng& rng, int trials,
    int* attempts_out = nullptr, const std::vector<std::uint64_t>& skip = {}) {
    if (budget <= 0 || seedfactors.size() < 2) return std::nullopt;
    int attempts = 0;
    for (std::uint64_t mask : detail::candidate_masks(seedfactors)) {
        if (std::find(skip.begin(), skip.end(), mask) != skip.end()) continue;
        if (attempts >= budget) break;
        ++attempts;
        UniPoly sg = detail::subset_product(seedfactors, mask);
        std::uint64_t full = (1ull << seedfactors.size()) - 1;
        UniPoly sh = detail::subset_product(seedfactors, full & ~mask);
        LiftRun run(f, sg, sh, norm, total_degree);
        run.run_to_target();
        if (!run.verify(rng, trials)) continue;
        Recombination rec{{}, sg, sh, std::move(run)};
        for (std::size_t i = 0; i < seedfactors.size(); ++i)
            if (mask >> i & 1) rec.subset.push_back(int(i));
        if (attempts_out) *attempts_out += attempts;
        return rec;
    }
    if (attempts_out) *attempts_out += attempts;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// The driver
// ---------------------------------------------------------------------------

namespace detail {

struct DriverCtx {
    FactorConfig cfg;
    Rng rng;
    FactorStats stats;
    bool has_residual = false;
};

/// Dense factor pieces recovered from a verified lift, back in the original
/// coordinates of the circuit that was lifted.
inline std::pair<DensePoly, DensePoly> dense_pieces(const LiftRun& run, const Normalization& norm,
                                                    int total_degree) {
    const Circuit& fhat = run.fhat();
    DensePoly fh = expand(fhat, DensePoly::kDegreeCap)[0];
    const int d = run.state().d1 + run.state().d2;
    std::vector<DensePoly> fdense;
    for (int l = 0; l < d; ++l)
        fdense.push_back(fh.coefficient_of_power(int(norm.yvar), l));
    std::vector<DensePoly> coeffs = run.dense_outputs(total_degree + 1, fdense);
    const int nv = int(fhat.nvars());
    auto side = [&](int offset, int deg) {
        DensePoly acc = DensePoly::variable(nv, int(norm.yvar), deg);
        for (int i = 0; i < deg; ++i)
            acc = acc + coeffs[std::size_t(offset + i)] *
                            DensePoly::variable(nv, int(norm.yvar), i);
        return acc;
    };
    DensePoly gnorm = side(0, run.state().d1);
    DensePoly hnorm = side(run.state().d1, run.state().d2);
    AffineMap inv = norm.inverse_map();
    DensePoly g = substitute_affine_dense(gnorm, inv).scaled(norm.lead_scale);
    DensePoly h = substitute_affine_dense(hnorm, inv);
    return {g, h};
}

inline void record_lift(DriverCtx& ctx, const LiftRun& run) {
    LiftReport rep;
    rep.size_log = run.state().size_log;
    rep.d1 = run.state().d1;
    rep.d2 = run.state().d2;
    ctx.stats.newton_steps_total += run.state().k - 1;
    ctx.stats.lift_count += 1;
    ctx.stats.lifts.push_back(std::move(rep));
}

inline void factor_rec(const Circuit& fc, int outer_mult, int depth, DriverCtx& ctx,
                       std::vector<FactorEntry>& entries, Fp& scale);

inline void recurse_on_pieces(const LiftRun& run, const Normalization& norm, int total_degree,
                              int outer_mult, int depth, DriverCtx& ctx,
                              std::vector<FactorEntry>& entries, Fp& scale) {
    auto [gd, hd] = dense_pieces(run, norm, total_degree);
    Circuit gc = dense_to_circuit(gd, std::uint32_t(gd.nvars()));
    Circuit hc = dense_to_circuit(hd, std::uint32_t(hd.nvars()));
    factor_rec(gc, outer_mult, depth + 1, ctx, entries, scale);
    factor_rec(hc, outer_mult, depth + 1, ctx, entries, scale);
}

/// Pure-power extraction through the normalized (monic) circuit: f may carry a
/// scalar factor with no e-th root in F_p, but fhat = f(sigma)/lead never
/// does. On success recurses on the denormalized root and books lead^outer
/// into the scale.
inline bool try_power_piece(const Circuit& /*fc*/, const NormalizeResult& nr, int mult,
                            int outer_mult, int depth, DriverCtx& ctx,
                            std::vector<FactorEntry>& entries, Fp& scale) {
    try {
        Circuit ghat = extract_root(nr.fhat, mult, ctx.rng, nr.total_degree, ctx.cfg.trials);
        DensePoly ghat_dense = expand(ghat, DensePoly::kDegreeCap)[0];
        DensePoly gdense = substitute_affine_dense(ghat_dense, nr.norm.inverse_map());
        Circuit gc = dense_to_circuit(gdense, std::uint32_t(gdense.nvars()));
        for (int i = 0; i < outer_mult; ++i) scale *= nr.norm.lead_scale;
        factor_rec(gc, outer_mult * mult, depth + 1, ctx, entries, scale);
        return true;
    } catch (const Error& e) {
        if (e.kind() != Errc::not_a_pure_power) throw;
        ctx.stats.retries += 1;
        return false;
    }
}

inline void factor_rec(const Circuit& fc, int outer_mult, int depth, DriverCtx& ctx,
                       std::vector<FactorEntry>& entries, Fp& scale) {
    if (depth > 64) fail(Errc::internal, "factorization recursion failed to terminate");
    const int d = degree_probe(fc, ctx.rng, ctx.cfg.degree_cap);
    if (d < 0) fail(Errc::internal, "a factor piece expanded to the zero polynomial");
    if (d == 0) {
        std::vector<Fp> origin(fc.nvars(), Fp::zero());
        Fp c = fc.eval(origin)[0];
        for (int i = 0; i < outer_mult; ++i) scale *= c;
        return;
    }

    for (int round = 0; round < ctx.cfg.max_rounds; ++round) {
        if (round > 0) ctx.stats.retries += 1;
        NormalizeResult nr = normalize(fc, std::nullopt, ctx.rng, std::nullopt, ctx.cfg.degree_cap,
                                       /*allow_identity=*/round == 0);
        ctx.stats.retries += nr.attempts - 1;
        const auto& seeds = nr.seeds.factors;

        if (seeds.size() == 1) {
            const auto& [img, mult] = seeds[0];
            if (mult == 1) {
                // irreducible image of full degree certifies irreducibility
                entries.push_back({fc, outer_mult, true, fc.size()});
                return;
            }
            if (try_power_piece(fc, nr, mult, outer_mult, depth, ctx, entries, scale)) return;
            continue; // fresh translation
        }

        // Multiplicity groups first: for each class m, try (prod_G p^m, rest).
        std::vector<std::uint64_t> tried;
        std::vector<int> mults;
        for (const auto& [p, m] : seeds)
            if (std::find(mults.begin(), mults.end(), m) == mults.end()) mults.push_back(m);
        std::sort(mults.begin(), mults.end());
        const std::uint64_t full = (1ull << seeds.size()) - 1;
        for (int m : mults) {
            std::uint64_t mask = 0;
            for (std::size_t i = 0; i < seeds.size(); ++i)
                if (seeds[i].second == m) mask |= (1ull << i);
            if (mask == full) {
                // the whole image sits at one multiplicity; a pure power is the
                // only proper move and only when m > 1
                if (m > 1 &&
                    try_power_piece(fc, nr, m, outer_mult, depth, ctx, entries, scale))
                    return;
                continue;
            }
            tried.push_back(mask);
            tried.push_back(full & ~mask);
            UniPoly sg = subset_product(seeds, mask);
            UniPoly sh = subset_product(seeds, full & ~mask);
            LiftRun run(fc, sg, sh, nr.norm, nr.total_degree);
            run.run_to_target();
            if (run.verify(ctx.rng, ctx.cfg.trials)) {
                record_lift(ctx, run);
                recurse_on_pieces(run, nr.norm, nr.total_degree, outer_mult, depth, ctx, entries,
                                  scale);
                return;
            }
            ctx.stats.retries += 1;
        }

        // General recombination over seed subsets.
        auto rec = recombination_search(seeds, fc, nr.norm, ctx.cfg.budget, nr.total_degree,
                                        ctx.rng, ctx.cfg.trials, &ctx.stats.retries, tried);
        if (rec) {
            record_lift(ctx, rec->run);
            recurse_on_pieces(rec->run, nr.norm, nr.total_degree, outer_mult, depth, ctx, entries,
                              scale);
            return;
        }

        // Nothing split. If the budget covered every bipartition, fc is
        // irreducible at this translation; certify only when the image was
        // already irreducible (handled above), otherwise try a fresh round and
        // fall through to a residual if rounds run out.
        std::size_t all = detail::candidate_masks(seeds).size();
        if (all <= std::size_t(ctx.cfg.budget) && round + 1 == ctx.cfg.max_rounds) {
            entries.push_back({fc, outer_mult, true, fc.size()});
            return;
        }
    }

    entries.push_back({fc, outer_mult, false, fc.size()});
    ctx.has_residual = true;
}

} // namespace detail

/// Full factorization driver: seed factorization of the
/// univariate image, multiplicity grouping, verified recombination over seed
/// subsets, coprime splits by Newton lifting, pure-power extraction, and
/// recursion until every piece has an irreducible image. Output factors are
/// scaled so the product identity scale * prod factors^mult = f holds exactly.
inline FactorizationResult factor(const Circuit& f, const FactorConfig& cfg) {
    if (f.num_outputs() != 1) fail(Errc::structural, "factor expects a single-output circuit");
    if (f.nvars() > std::uint32_t(DensePoly::kMaxVars))
        fail(Errc::capacity, "the factorization driver leans on the dense oracle, which supports at most 8 variables");
    const std::uint64_t p = Fp::modulus();
    if (p <= 2 * std::uint64_t(cfg.degree_cap) * std::uint64_t(cfg.degree_cap))
        fail(Errc::unsupported, "characteristic must exceed 2*cap^2 for the degree cap in use");

    detail::DriverCtx ctx{cfg, Rng(cfg.rng_seed), {}, false};
    ctx.stats.prime = p;
    ctx.stats.rng_seed = cfg.rng_seed;
    ctx.stats.n = f.nvars();
    ctx.stats.input_size = f.size();

    // reject the zero polynomial
    {
        std::vector<Fp> point(f.nvars());
        bool all_zero = true;
        for (int t = 0; t < 20 && all_zero; ++t) {
            for (auto& v : point) v = ctx.rng.field_element();
            all_zero = f.eval(point)[0].is_zero();
        }
        if (all_zero) fail(Errc::domain, "cannot factor the zero polynomial");
    }

    ctx.stats.d = degree_probe(f, ctx.rng, cfg.degree_cap);

    FactorizationResult res;
    detail::factor_rec(f, 1, 0, ctx, res.factors, res.scale);
    res.has_residual = ctx.has_residual;

    // canonical scaling: make each factor's dense leading term (in the packed
    // monomial order) equal to 1 and push the scalars into the global scale
    for (auto& entry : res.factors) {
        DensePoly dp = expand(entry.circuit, DensePoly::kDegreeCap)[0];
        Fp lead = dp.terms().back().second;
        if (lead != Fp::one()) {
            FpMatrix m(1, 1);
            m.at(0, 0) = lead.inverse();
            entry.circuit = linear_combination(entry.circuit, m, {});
            for (int i = 0; i < entry.multiplicity; ++i) res.scale *= lead;
        }
        entry.circuit = prune(entry.circuit);
        entry.size = entry.circuit.size();
    }

    // deterministic output order
    std::sort(res.factors.begin(), res.factors.end(), [&](const FactorEntry& a, const FactorEntry& b) {
        if (a.size != b.size) return a.size < b.size;
        return serialize_circuit(a.circuit) < serialize_circuit(b.circuit);
    });

    // product identity, always
    {
        std::vector<Fp> point(f.nvars());
        for (int t = 0; t < cfg.trials; ++t) {
            for (auto& v : point) v = ctx.rng.field_element();
            Fp lhs = res.scale;
            for (const auto& entry : res.factors) {
                Fp val = entry.circuit.eval(point)[0];
                lhs *= val.pow(std::uint64_t(entry.multiplicity));
            }
            if (lhs != f.eval(point)[0])
                fail(Errc::verification, "factor product identity failed its final check");
        }
    }

    res.stats = std::move(ctx.stats);
    return res;
}

/// Line-oriented `key = value` stats text with stable keys.
inline std::string stats_text(const FactorizationResult& res) {
    std::string out;
    auto kv = [&](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
    kv("prime", std::to_string(res.stats.prime));
    kv("rng_seed", std::to_string(res.stats.rng_seed));
    kv("n", std::to_string(res.stats.n));
    kv("d", std::to_string(res.stats.d));
    kv("input_size", std::to_string(res.stats.input_size));
    kv("retries", std::to_string(res.stats.retries));
    kv("scale", res.scale.to_string());
    kv("nfactors", std::to_string(res.factors.size()));
    kv("residual", res.has_residual ? "1" : "0");
    kv("lift_count", std::to_string(res.stats.lift_count));
    kv("newton_steps_total", std::to_string(res.stats.newton_steps_total));
    for (std::size_t i = 0; i < res.factors.size(); ++i) {
        kv("size_" + std::to_string(i), std::to_string(res.factors[i].size));
        kv("mult_" + std::to_string(i), std::to_string(res.factors[i].multiplicity));
        kv("certified_" + std::to_string(i), res.factors[i].certified_irreducible ? "1" : "0");
    }
    return out;
}

} // namespace factorforge
