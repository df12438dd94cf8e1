// sixpow: decide which integers are sums of two rational sixth powers.
//
// Pipeline subcommands: `local` enumerates locally solvable k below a bound,
// `theta` removes odd k with a rank-zero certificate, `mwsieve` proves
// C_k(Q) empty from known Mordell-Weil generators.  `repfind`, `family` and
// `verify-rep` handle explicit rational representations.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sixpow/curve_local.hpp"
#include "sixpow/mwsieve.hpp"
#include "sixpow/repfind.hpp"
#include "sixpow/theta.hpp"

using namespace sixpow;

namespace {

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot open for writing: " + path);
    return file;
}

int cmd_local(uint64_t max, const std::string& out, int threads) {
    auto ks = enumerate_locally_solvable(max, threads);
    std::ofstream file;
    write_klist(open_out(file, out), ks);
    std::cerr << "local: " << ks.size() << " values below " << max << "\n";
    return 0;
}

int cmd_theta(const std::string& klist, const std::string& out, uint64_t limit,
              const std::string& logpath) {
    auto ks = read_klist_file(klist);
    std::vector<uint64_t> odd;
    for (uint64_t k : ks)
        if (k % 2 == 1) odd.push_back(k);
    uint64_t needed = 0;
    for (uint64_t k : odd) needed = std::max(needed, squarefree_part(k));
    if (limit == 0) limit = needed;
    if (limit < needed)
        throw std::invalid_argument("theta: --limit too small for the squarefree parts in the input");

    // optional binary cache keyed by limit
    HSeries h;
    bool have = false;
    std::string cache_path;
    if (const char* dir = std::getenv("SIXPOW_CACHE_DIR")) {
        cache_path = std::string(dir) + "/h_theta_" + std::to_string(limit) + "_odd.bin";
        if (auto cached = read_h_cache(cache_path)) {
            if (cached->limit >= limit) {
                h = std::move(*cached);
                have = true;
                std::cerr << "theta: loaded coefficient cache " << cache_path << "\n";
            }
        }
    }
    if (!have) {
        h = h_coeffs(limit, /*odd_only=*/true);
        if (!cache_path.empty()) write_h_cache(cache_path, h);
    }
    RankZeroCertifier cert(std::move(h));

    std::ofstream logfile;
    std::ostream* logos = nullptr;
    if (!logpath.empty()) {
        logfile.open(logpath);
        if (!logfile) throw std::invalid_argument("cannot open log: " + logpath);
        logos = &logfile;
    }
    std::vector<uint64_t> survivors;
    for (uint64_t k : odd) {
        auto c = cert.certify(k);
        if (logos)
            *logos << k << " " << c.kprime << " " << c.C << " "
                   << (c.verdict == CertVerdict::CertifiedRankZero ? "certified_rank_zero"
                                                                   : "inconclusive")
                   << "\n";
        if (c.verdict == CertVerdict::Inconclusive) survivors.push_back(k);
    }
    std::ofstream file;
    write_klist(open_out(file, out), survivors);
    std::cerr << "theta: " << odd.size() << " odd inputs, " << survivors.size()
              << " survivors\n";
    return 0;
}

int cmd_mwsieve(uint64_t k, const std::string& gens, int map_index, uint64_t nmax, uint64_t pmax,
                const std::string& out, bool detail) {
    auto records = read_generator_file_path(gens);
    std::vector<const GeneratorRecord*> mine;
    for (const auto& r : records)
        if (r.k == k) mine.push_back(&r);
    if (mine.empty())
        throw std::invalid_argument("no generator record for k = " + std::to_string(k) +
                                    " in " + gens);

    const GeneratorRecord* chosen = nullptr;
    if (map_index != 0) {
        CurveTag want = builtin_map(map_index).tag;
        for (const auto* r : mine)
            if (r->tag == want) chosen = r;
        if (!chosen)
            throw std::invalid_argument("no generator record for the requested map's curve");
    } else {
        // least rank first, curve-tag order on ties; pick the first map with
        // that codomain
        for (const auto* r : mine)
            if (!chosen || r->subgroup.rank() < chosen->subgroup.rank() ||
                (r->subgroup.rank() == chosen->subgroup.rank() && r->tag < chosen->tag))
                chosen = r;
        for (int idx = 1; idx <= 10; ++idx)
            if (builtin_map(idx).tag == chosen->tag) {
                map_index = idx;
                break;
            }
    }

    SieveConfig cfg;
    cfg.k = k;
    cfg.map_index = map_index;
    cfg.A = chosen->subgroup;
    // truncate the default ladder at --nmax and cap the schedule at --pmax
    std::vector<int> ladder;
    std::vector<uint64_t> caps;
    uint64_t N = 1;
    std::vector<int> def_ladder{2, 2, 3, 7};
    std::vector<uint64_t> def_caps{311, 311, 479, 1021};
    for (size_t i = 0; i < def_ladder.size(); ++i) {
        if (N * def_ladder[i] > nmax) break;
        N *= def_ladder[i];
        ladder.push_back(def_ladder[i]);
        caps.push_back(std::min<uint64_t>(def_caps[i], pmax));
    }
    if (!caps.empty()) caps.back() = pmax;
    if (ladder.empty()) throw std::invalid_argument("mwsieve: --nmax leaves no ladder stage");
    cfg.ladder = ladder;
    cfg.stage_pmax = caps;

    auto res = run_sieve(cfg);
    std::ofstream file;
    write_transcript(open_out(file, out), cfg, res, detail);
    return 0;
}

int cmd_repfind(uint64_t m, const std::string& out) {
    auto reps = find_representation(m);
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    for (const auto& r : reps) os << r.k << " " << r.a << " " << r.b << " " << r.m << "\n";
    std::cerr << "repfind: " << reps.size() << " candidates for m = " << m << "\n";
    return 0;
}

int cmd_odd_power(unsigned n) {
    auto r = odd_power_rep(n);
    std::cout << r.k << " = (" << r.x << ")^" << n << " + (" << r.y << ")^" << n << "\n";
    return 0;
}

int cmd_family(int64_t tmin, int64_t tmax) {
    auto res = verify_family(tmin, tmax);
    std::cout << "range [" << tmin << ", " << tmax << "]: values "
              << (res.all_ok ? "PASS" : "FAIL") << ", coefficients "
              << (res.coefficient_claim ? "PASS" : "FAIL") << ", mod-13 obstruction "
              << (res.five_not_a_sum_mod_13 ? "PASS" : "FAIL") << "\n";
    for (const auto& w : res.witnesses)
        std::cout << "t = " << w.t << ": k = " << w.k << " (k mod 13 = " << w.k % 13 << ")\n";
    return (res.all_ok && res.coefficient_claim && res.five_not_a_sum_mod_13) ? 0 : 1;
}

int cmd_verify_rep(const std::string& k, const std::string& a, const std::string& b,
                   const std::string& m) {
    bool ok = verify_rep(BigInt(k), BigInt(a), BigInt(b), BigInt(m));
    std::cout << (ok ? "OK" : "FAIL") << ": " << k << " = (" << a << "/" << m << ")^6 + (" << b
              << "/" << m << ")^6\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sums of two rational sixth powers: local sieve, rank-zero "
                 "certificates, Mordell-Weil sieve and representation search"};
    app.require_subcommand(1);

    uint64_t local_max = 0;
    std::string local_out = "-";
    int local_threads = 1;
    auto* local = app.add_subcommand("local", "enumerate locally solvable k below a bound");
    local->add_option("--max", local_max, "upper bound (exclusive)")->required();
    local->add_option("--out", local_out, "output k-list file, - for stdout");
    local->add_option("--threads", local_threads, "worker threads")->check(CLI::Range(1, 64));

    std::string theta_klist, theta_out = "-", theta_log;
    uint64_t theta_limit = 0;
    auto* theta = app.add_subcommand("theta", "filter odd k by rank-zero certificates");
    theta->add_option("--klist", theta_klist, "input k-list")->required();
    theta->add_option("--out", theta_out, "survivor k-list, - for stdout");
    theta->add_option("--limit", theta_limit, "coefficient limit (default: max squarefree part)");
    theta->add_option("--log", theta_log, "per-k certificate log: `k k' C(k') verdict`");

    uint64_t mw_k = 0, mw_nmax = 84, mw_pmax = 1021;
    int mw_map = 0;
    std::string mw_gens, mw_out = "-";
    bool mw_detail = false;
    auto* mw = app.add_subcommand("mwsieve", "run the Mordell-Weil sieve for one k");
    mw->add_option("--k", mw_k, "the integer k")->required();
    mw->add_option("--gens", mw_gens, "generator file")->required();
    mw->add_option("--map", mw_map, "map index 1..10 (default: least-rank record)")
        ->check(CLI::Range(1, 10));
    mw->add_option("--nmax", mw_nmax, "largest modulus N");
    mw->add_option("--pmax", mw_pmax, "largest sieve prime");
    mw->add_option("--out", mw_out, "transcript file, - for stdout");
    mw->add_flag("--detail", mw_detail, "include per-prime group and image comments");

    uint64_t rep_m = 0;
    unsigned rep_odd_n = 0;
    std::string rep_out = "-";
    auto* rep = app.add_subcommand("repfind", "search rational representations with denominator m");
    auto* rep_m_opt = rep->add_option("--m", rep_m, "denominator");
    rep->add_option("--out", rep_out, "output file, - for stdout");
    auto* rep_odd = rep->add_option("--odd-power", rep_odd_n, "print the halves pair for odd n");
    rep_odd->excludes(rep_m_opt);

    int64_t fam_tmin = -1000, fam_tmax = 1000;
    auto* fam = app.add_subcommand("family", "verify the infinite family of rational-only sums");
    fam->add_option("--tmin", fam_tmin, "range start");
    fam->add_option("--tmax", fam_tmax, "range end");

    std::string vr_k, vr_a, vr_b, vr_m;
    auto* vr = app.add_subcommand("verify-rep", "check k = (a/m)^6 + (b/m)^6 exactly");
    vr->add_option("k", vr_k)->required();
    vr->add_option("a", vr_a)->required();
    vr->add_option("b", vr_b)->required();
    vr->add_option("m", vr_m)->required();

    try {
        app.parse(argc, argv);
        if (local->parsed()) return cmd_local(local_max, local_out, local_threads);
        if (theta->parsed()) return cmd_theta(theta_klist, theta_out, theta_limit, theta_log);
        if (mw->parsed())
            return cmd_mwsieve(mw_k, mw_gens, mw_map, mw_nmax, mw_pmax, mw_out, mw_detail);
        if (rep->parsed()) {
            if (rep_odd_n > 0) return cmd_odd_power(rep_odd_n);
            if (rep_m == 0) throw std::invalid_argument("repfind: --m or --odd-power required");
            return cmd_repfind(rep_m, rep_out);
        }
        if (fam->parsed()) return cmd_family(fam_tmin, fam_tmax);
        if (vr->parsed()) return cmd_verify_rep(vr_k, vr_a, vr_b, vr_m);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const patch_coverage_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
