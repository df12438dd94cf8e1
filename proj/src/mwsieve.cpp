#include "sixpow/mwsieve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>

#include "sixpow/curve_local.hpp"

namespace sixpow {

namespace {

struct PrimeData {
    AbelianGroupFp group;
    std::vector<ECPointFp> image;
    std::vector<ECPointFp> red_gens;
    ECPointFp red_torsion;
};

// shared filtering context; caches per-prime data across ladder stages
class SieveContext {
  public:
    explicit SieveContext(const SieveConfig& cfg)
        : cfg_(cfg), E_(curve_param(builtin_map(cfg.map_index).tag, cfg.k)) {
        if (cfg_.A.a != E_.a)
            throw std::invalid_argument("sieve: subgroup curve does not match the map codomain");
        if (cfg_.A.rank() > kMaxSieveRank)
            throw std::invalid_argument("sieve: rank exceeds supported maximum");
        SexticCurve validated(cfg_.k);  // positive and sixth-power-free
        (void)validated;
    }

    const MordellCurve& curve() const { return E_; }

    bool usable(uint64_t p) const {
        if (p < 5 || mod_u64(6 * E_.a, p) == 0) return false;
        for (const auto& P : cfg_.A.gens)
            if (mod_u64(P.Z(), p) == 0) return false;
        if (cfg_.A.torsion.gen && mod_u64(cfg_.A.torsion.gen->Z(), p) == 0) return false;
        return true;
    }

    // nullptr when the patches fail to cover C_k(F_p)
    const PrimeData* data(uint64_t p) {
        auto it = cache_.find(p);
        if (it != cache_.end()) return it->second.has_value() ? &*it->second : nullptr;
        std::optional<PrimeData> d;
        try {
            PrimeData pd;
            pd.group = group_structure_fp(E_, p);
            pd.image = image_set_fp(cfg_.k, p, cfg_.map_index);
            for (const auto& P : cfg_.A.gens) pd.red_gens.push_back(reduce_point(E_, P, p));
            pd.red_torsion =
                cfg_.A.torsion.gen ? reduce_point(E_, *cfg_.A.torsion.gen, p) : ECPointFp{};
            d = std::move(pd);
        } catch (const patch_coverage_error&) {
            d = std::nullopt;
        }
        auto [pos, inserted] = cache_.emplace(p, std::move(d));
        (void)inserted;
        return pos->second.has_value() ? &*pos->second : nullptr;
    }

    // keeps the cosets whose reduction meets image + N*E(F_p)
    void filter(SieveState& state, uint64_t p, const PrimeData& pd) {
        const uint64_t N = state.N;
        const size_t r = cfg_.A.gens.size();
        const CurveFp& Ep = pd.group.curve;

        // membership table for S = image + N*E(F_p), indexed by point key
        auto local_key = [&](const ECPointFp& P) { return P.inf ? p * p : P.x * p + P.y; };
        std::vector<bool> in_S(p * p + 1, false);
        {
            std::vector<ECPointFp> NG;
            std::vector<bool> seen(p * p + 1, false);
            for (const auto& g : pd.group.points) {
                ECPointFp h = fp_mul(Ep, N % pd.group.order, g);
                if (!seen[local_key(h)]) {
                    seen[local_key(h)] = true;
                    NG.push_back(h);
                }
            }
            for (const auto& i : pd.image)
                for (const auto& h : NG) in_S[local_key(fp_add(Ep, i, h))] = true;
        }

        // multiples of the reduced generators and torsion generator
        std::vector<std::vector<ECPointFp>> mult(r);
        for (size_t i = 0; i < r; ++i) {
            ECPointFp acc{};
            mult[i].reserve(N);
            for (uint64_t m = 0; m < N; ++m) {
                mult[i].push_back(acc);
                acc = fp_add(Ep, acc, pd.red_gens[i]);
            }
        }
        std::vector<ECPointFp> tmult;
        {
            ECPointFp acc{};
            for (uint64_t m = 0; m < state.torsion_mod; ++m) {
                tmult.push_back(acc);
                acc = fp_add(Ep, acc, pd.red_torsion);
            }
        }

        // prefix sums over the sorted coset list to avoid recomputing
        uint64_t before = state.admissible.size();
        std::vector<Coset> kept;
        std::array<ECPointFp, kMaxSieveRank + 1> prefix;
        prefix[0] = ECPointFp{};
        const Coset* prev = nullptr;
        for (const Coset& c : state.admissible) {
            size_t start = 0;
            if (prev) {
                while (start < r && prev->n[start] == c.n[start]) ++start;
            }
            for (size_t i = start; i < r; ++i)
                prefix[i + 1] = fp_add(Ep, prefix[i], mult[i][c.n[i]]);
            ECPointFp total = fp_add(Ep, prefix[r], tmult[c.t]);
            if (in_S[local_key(total)]) kept.push_back(c);
            prev = &c;
        }
        state.admissible = std::move(kept);
        state.consumed.push_back(p);
        state.log.push_back(SieveEvent{N, p, before, state.admissible.size()});
    }

  private:
    const SieveConfig& cfg_;
    MordellCurve E_;
    std::map<uint64_t, std::optional<PrimeData>> cache_;
};

uint64_t lift_count(const SieveState& state, int r_mult, size_t rank, uint64_t torsion_order) {
    uint64_t per = 1;
    for (size_t i = 0; i < rank; ++i) per *= static_cast<uint64_t>(r_mult);
    uint64_t new_tmod = std::gcd(state.N * r_mult, torsion_order);
    per *= new_tmod / state.torsion_mod;
    return state.admissible.size() * per;
}

void lift_state(SieveState& state, int r_mult, size_t rank, uint64_t torsion_order) {
    uint64_t old_N = state.N;
    uint64_t new_N = old_N * r_mult;
    uint64_t old_tmod = state.torsion_mod;
    uint64_t new_tmod = std::gcd(new_N, torsion_order);
    std::vector<Coset> lifted;
    lifted.reserve(lift_count(state, r_mult, rank, torsion_order));
    std::vector<uint16_t> delta(rank, 0);
    for (const Coset& c : state.admissible) {
        std::fill(delta.begin(), delta.end(), 0);
        while (true) {
            for (uint64_t tj = 0; tj * old_tmod + c.t < new_tmod; ++tj) {
                Coset lc = c;
                for (size_t i = 0; i < rank; ++i)
                    lc.n[i] = static_cast<uint16_t>(c.n[i] + old_N * delta[i]);
                lc.t = static_cast<uint16_t>(c.t + tj * old_tmod);
                lifted.push_back(lc);
            }
            size_t i = 0;
            while (i < rank && ++delta[i] == r_mult) delta[i++] = 0;
            if (i == rank && rank > 0) break;
            if (rank == 0) break;
        }
    }
    std::sort(lifted.begin(), lifted.end());
    state.N = new_N;
    state.torsion_mod = new_tmod;
    state.admissible = std::move(lifted);
}

}  // namespace

SieveState make_initial_state(const SieveConfig& cfg, uint64_t N) {
    SieveState state;
    state.admissible.push_back(Coset{});
    if (N > 1) {
        // single lift by the composite multiplier
        lift_state(state, static_cast<int>(N), cfg.A.gens.size(),
                   static_cast<uint64_t>(cfg.A.torsion.order));
    }
    return state;
}

void admissible_at_prime(const SieveConfig& cfg, SieveState& state, uint64_t p) {
    SieveContext ctx(cfg);
    if (!ctx.usable(p)) throw std::invalid_argument("admissible_at_prime: p not usable for this curve");
    const PrimeData* pd = ctx.data(p);
    if (!pd) {
        state.skipped.push_back(p);
        return;
    }
    ctx.filter(state, p, *pd);
}

SieveResult run_sieve(const SieveConfig& cfg) {
    if (cfg.ladder.size() != cfg.stage_pmax.size())
        throw std::invalid_argument("run_sieve: ladder and stage_pmax must have equal length");
    SieveContext ctx(cfg);
    SieveResult res;

    for (int l : cfg.ladder) {
        if (l < 2 || !is_prime(static_cast<uint64_t>(l)) || l > 100)
            throw std::invalid_argument("run_sieve: ladder entries must be primes <= 100");
    }
    {
        std::vector<uint64_t> sat_primes;
        for (uint32_t q : primes_up_to(200))
            if (q >= 5) sat_primes.push_back(q);
        std::vector<uint64_t> distinct(cfg.ladder.begin(), cfg.ladder.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (uint64_t ell : distinct)
            res.saturation.push_back({ell, certify_nondivisibility(cfg.A, ell, sat_primes)});
    }

    uint64_t pmax_all = *std::max_element(cfg.stage_pmax.begin(), cfg.stage_pmax.end());
    std::vector<uint64_t> primes;
    for (uint32_t q : primes_up_to(static_cast<uint32_t>(pmax_all)))
        if (q >= 5) primes.push_back(q);

    SieveState state = make_initial_state(cfg, 1);
    const size_t rank = cfg.A.gens.size();
    const auto torsion_order = static_cast<uint64_t>(cfg.A.torsion.order);

    for (size_t stage = 0; stage < cfg.ladder.size(); ++stage) {
        if (lift_count(state, cfg.ladder[stage], rank, torsion_order) > cfg.max_cosets) break;
        lift_state(state, cfg.ladder[stage], rank, torsion_order);
        for (uint64_t p : primes) {
            if (p > cfg.stage_pmax[stage]) break;
            if (!ctx.usable(p)) continue;
            const PrimeData* pd = ctx.data(p);
            if (!pd) {
                if (std::find(state.skipped.begin(), state.skipped.end(), p) == state.skipped.end())
                    state.skipped.push_back(p);
                continue;
            }
            ctx.filter(state, p, *pd);
            res.p_max = std::max(res.p_max, p);
            if (state.admissible.empty()) {
                res.verdict = SieveVerdict::Empty;
                res.n_max = state.N;
                res.state = std::move(state);
                return res;
            }
        }
    }
    res.verdict = SieveVerdict::Exhausted;
    res.n_max = state.N;
    res.state = std::move(state);
    return res;
}

void write_transcript(std::ostream& os, const SieveConfig& cfg, const SieveResult& res,
                      bool detail) {
    os << "# sieve k=" << cfg.k << " map=" << cfg.map_index
       << " curve=" << tag_name(builtin_map(cfg.map_index).tag) << " rank=" << cfg.A.rank()
       << " torsion=" << cfg.A.torsion.order << "\n";
    for (const auto& s : res.saturation) {
        os << "# saturation l=" << s.ell << " "
           << (s.certified ? "certified" : "NOT-certified (verdict conditional on saturation)")
           << "\n";
    }
    for (uint64_t p : res.state.skipped) os << "# skipped p=" << p << " (patch coverage)\n";
    if (detail) {
        SieveContext ctx(cfg);
        std::vector<uint64_t> ps = res.state.consumed;
        std::sort(ps.begin(), ps.end());
        ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        for (uint64_t p : ps) {
            MordellCurve E(cfg.A.a);
            auto G = group_structure_fp(E, p);
            auto img = image_set_fp(cfg.k, p, cfg.map_index);
            os << "# p=" << p << " E(F_p)=Z/" << G.d1 << "xZ/" << G.d2 << " image={";
            for (size_t i = 0; i < img.size(); ++i) {
                if (i) os << ",";
                if (img[i].inf) os << "inf";
                else os << "(" << img[i].x << "," << img[i].y << ")";
            }
            os << "}\n";
        }
    }
    for (const auto& e : res.state.log)
        os << cfg.k << " " << e.N << " " << e.p << " " << e.before << " " << e.after << "\n";
    os << cfg.k << " VERDICT " << (res.verdict == SieveVerdict::Empty ? "EMPTY" : "EXHAUSTED")
       << " " << res.n_max << " " << res.p_max << "\n";
}

}  // namespace sixpow
