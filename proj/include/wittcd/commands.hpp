#pragma once

// The command layer behind the wittcd executable. Each command takes a
// RunConfig and returns a JSON report with an exit code; the executable only
// parses flags and prints.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "comparison.hpp"
#include "finite_ring.hpp"
#include "galois_ring.hpp"
#include "homological.hpp"
#include "modules.hpp"
#include "perfect_ring.hpp"
#include "report_json.hpp"
#include "witt_polys.hpp"
#include "witt_ring.hpp"

namespace wittcd {

enum ExitCode : int { kVerified = 0, kUsageError = 1, kInconclusive = 2, kFalsified = 3 };

inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr const char* kCacheDirEnv = "WITTCD_CACHE_DIR";

struct RunConfig {
  std::uint32_t prime = 2;
  unsigned level = 3;
  std::string field = "F2";
  std::string source;  // cd-verify: a field whose multiplicative monoid replaces (R,·)
  std::string target;
  std::string group;   // module-classify: comma-separated invariant factors
  std::string module_file;
  std::string algebra;
  unsigned degree = 1;
  unsigned cap = 4;
  std::optional<unsigned> levels;
  unsigned imax = 2;
  bool enumerate = false;
  unsigned max_group = 16;
  bool list = false;
  std::uint64_t triples = 10000;
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path cache_dir = ".wittcd-cache";
  std::string format = "json";
};

struct CommandResult {
  Json report;
  int exit_code = kVerified;
};

/// The cache directory: the environment variable wins over the flag.
inline std::filesystem::path effective_cache_dir(const RunConfig& cfg) {
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
  return cfg.cache_dir;
}

inline std::string format_report(const Json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format == "text") return render_text(report);
  throw std::invalid_argument("unknown output format '" + format + "'");
}

/// Parses a finite ring: Z<n>, a perfect ring such as F4 or F2xF4,
/// W<n>F<q> (Witt vectors of length n), or F<p>[e]/(e^<n>).
inline FiniteRing parse_finite_ring(const std::string& spec) {
  std::smatch m;
  if (std::regex_match(spec, m, std::regex(R"(Z(\d+))"))) return FiniteRing::integers_mod(std::stoll(m[1]));
  if (std::regex_match(spec, m, std::regex(R"(W(\d+)\(?(F[0-9xF]+?)\)?)"))) {
    const unsigned n = static_cast<unsigned>(std::stoul(m[1]));
    const PerfectRing R = parse_perfect_ring(m[2]);
    if (n == 0) throw std::invalid_argument("Witt vectors need length >= 1");
    if (polynomial_engine_feasible(R.characteristic(), n)) return WittRing(R, n).as_finite_ring();
    return witt_target(R, n).ring;
  }
  if (std::regex_match(spec, m, std::regex(R"(F(\d+)\[([a-z])\]/\(\2\^(\d+)\))"))) {
    const std::int64_t p = std::stoll(m[1]);
    const std::size_t n = std::stoul(m[3]);
    if (!detail::is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("truncated polynomial ring needs a prime");
    if (n < 1) throw std::invalid_argument("truncated polynomial ring needs exponent >= 1");
    std::vector<Coords> table(n * n, Coords(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; i + j < n; ++j) table[i * n + j][i + j] = 1;
    Coords one(n, 0);
    one[0] = 1;
    return FiniteRing(std::vector<std::int64_t>(n, p), std::move(table), one, spec);
  }
  return FiniteRing::from_perfect_ring(parse_perfect_ring(spec));
}

/// The prime p with |A| a power of p.
inline std::uint32_t residue_prime(const FiniteRing& A) {
  std::int64_t c = A.characteristic();
  for (std::int64_t q = 2; q <= c; ++q)
    if (c % q == 0) {
      while (c % q == 0) c /= q;
      if (c != 1) throw std::invalid_argument(A.name() + " does not have prime-power characteristic");
      return static_cast<std::uint32_t>(q);
    }
  throw std::invalid_argument("the zero ring has no residue characteristic");
}

// ---------------------------------------------------------------------------
// witt-polys
// ---------------------------------------------------------------------------

/// Generates the cache file for (p, n) or, if it exists, recomputes and
/// compares it byte for byte.
inline CommandResult cmd_witt_polys(const RunConfig& cfg) {
  const std::uint32_t p = cfg.prime;
  const unsigned n = cfg.level;
  if (!detail::is_prime(p)) throw std::invalid_argument("--prime must be prime");
  if (n < 1) throw std::invalid_argument("--level must be >= 1");
  const WittPolyCache c = universal_polys(p, n);
  const auto failures = ghost_identity_failures(c);
  const std::string text = serialize_cache(c);
  if (!(parse_cache(text) == c)) throw std::logic_error("cache format does not round-trip");

  const auto dir = effective_cache_dir(cfg);
  const auto path = cache_file_path(dir, p, n);
  CommandResult out;
  out.report = to_json(c, 200);
  out.report["cache_file"] = path.filename().string();
  out.report["ghost_identity_failures"] = failures;

  if (std::filesystem::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string stored = ss.str();
    if (stored == text) {
      out.report["status"] = "ok";
    } else {
      out.report["status"] = "corrupt";
      Json diff = Json::array();
      std::istringstream a(text), b(stored);
      std::string la, lb;
      std::size_t line = 0;
      while (diff.size() < 10) {
        const bool ha = static_cast<bool>(std::getline(a, la));
        const bool hb = static_cast<bool>(std::getline(b, lb));
        if (!ha && !hb) break;
        ++line;
        if (!ha) la.clear();
        if (!hb) lb.clear();
        if (la != lb) diff.push_back({{"line", line}, {"expected", la.substr(0, 160)}, {"found", lb.substr(0, 160)}});
      }
      out.report["diff"] = diff;
      out.exit_code = kUsageError;
      return out;
    }
  } else {
    std::filesystem::create_directories(dir);
    std::ofstream(path, std::ios::binary) << text;
    out.report["status"] = "generated";
  }
  out.exit_code = failures.empty() ? kVerified : kFalsified;
  return out;
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

/// Digit transport W_n(F_{p^k}) -> Galois ring, exhaustive for small rings and
/// randomized (seeded) otherwise.
inline CommandResult cmd_oracle(const RunConfig& cfg) {
  const OracleReport r = oracle_match(cfg.prime, cfg.degree, cfg.level, cfg.seed, cfg.triples);
  CommandResult out;
  out.report = {{"p", r.p},
                {"k", r.k},
                {"n", r.n},
                {"mode", r.mode},
                {"seed", r.mode == "random" ? Json(cfg.seed) : Json(nullptr)},
                {"checks", r.checks},
                {"bijective", r.bijective},
                {"additive", r.additive},
                {"multiplicative", r.multiplicative},
                {"unital", r.unital},
                {"verdict", r.matched() ? "isomorphism" : "mismatch"}};
  out.exit_code = r.matched() ? kVerified : kFalsified;
  return out;
}

// ---------------------------------------------------------------------------
// cd-verify
// ---------------------------------------------------------------------------

inline int verdict_exit_code(const std::string& verdict) {
  if (verdict == "verified") return kVerified;
  if (verdict == "inconclusive") return kInconclusive;
  return kFalsified;
}

inline CommandResult cmd_cd_verify(const RunConfig& cfg) {
  const PerfectRing R = parse_perfect_ring(cfg.field);
  if (cfg.cap < 1) throw std::invalid_argument("--cap must be >= 1");
  ProIsoReport r;
  if (cfg.source.empty()) {
    r = pro_isomorphism_report(R, cfg.cap, cfg.levels);
  } else {
    // units go to 1 and zero to zero
    const PerfectRing S = parse_perfect_ring(cfg.source);
    std::vector<PerfectRing::Element> phi(S.size(), R.one());
    phi[S.zero()] = R.zero();
    r = generalized_comparison(FiniteCommMonoid::multiplicative(S), phi, R, cfg.cap, cfg.levels);
  }
  CommandResult out{to_json(r), verdict_exit_code(r.verdict)};
  out.report["ring"] = ring_json(R);
  out.report["ring_name"] = R.name();
  return out;
}

// ---------------------------------------------------------------------------
// module-classify
// ---------------------------------------------------------------------------

inline CommandResult cmd_module_classify(const RunConfig& cfg) {
  CommandResult out;
  Json modules = Json::array();
  Json disagreements = Json::array();
  Json groups = Json::array();

  auto run_one = [&](const ModuleWithAction& M, ClassifierContext& ctx, Json& counts) {
    const ClassificationReport c = classify(M, ctx);
    Json entry = to_json(M);
    entry.update(to_json(c));
    if (!c.agree()) disagreements.push_back(entry);
    if (cfg.list || !cfg.module_file.empty()) modules.push_back(entry);
    counts["actions"] = counts["actions"].get<std::uint64_t>() + 1;
    if (c.agree() && c.i_complete) counts["complete"] = counts["complete"].get<std::uint64_t>() + 1;
  };

  if (!cfg.module_file.empty()) {
    std::ifstream in(cfg.module_file);
    if (!in) throw std::invalid_argument("cannot read module file " + cfg.module_file);
    Json input;
    try {
      input = Json::parse(in);
    } catch (const Json::exception& e) {
      throw std::invalid_argument(std::string("module file is not valid JSON: ") + e.what());
    }
    if (!input.is_array()) input = Json::array({input});
    for (const auto& j : input) {
      const ModuleWithAction M = module_from_json(j);
      ClassifierContext ctx(M.ring());
      Json counts = {{"actions", 0}, {"complete", 0}};
      run_one(M, ctx, counts);
    }
  } else {
    const PerfectRing R = parse_perfect_ring(cfg.field);
    const std::int64_t p = R.characteristic();
    std::vector<std::vector<std::int64_t>> group_list;
    if (!cfg.group.empty()) {
      std::vector<std::int64_t> g;
      std::stringstream ss(cfg.group);
      std::string tok;
      while (std::getline(ss, tok, ',')) g.push_back(std::stoll(tok));
      std::sort(g.begin(), g.end());
      group_list.push_back(g);
    } else if (cfg.enumerate) {
      unsigned e = 0;
      for (std::int64_t q = p; q <= static_cast<std::int64_t>(cfg.max_group); q *= p) ++e;
      group_list = abelian_p_groups(p, e);
      std::sort(group_list.begin(), group_list.end());
    } else {
      throw std::invalid_argument("module-classify needs --group, --enumerate or --module");
    }
    ClassifierContext ctx(R);
    for (const auto& g : group_list) {
      Json counts = {{"factors", g}, {"actions", 0}, {"complete", 0}};
      for (const auto& M : enumerate_actions(R, g)) run_one(M, ctx, counts);
      groups.push_back(counts);
    }
    out.report["ring"] = R.name();
    out.report["groups"] = groups;
  }
  if (!modules.empty()) out.report["modules"] = modules;
  out.report["disagreements"] = disagreements;
  out.report["verdict"] = disagreements.empty() ? "agreement" : "falsified";
  out.exit_code = disagreements.empty() ? kVerified : kFalsified;
  return out;
}

// ---------------------------------------------------------------------------
// universal / tilt
// ---------------------------------------------------------------------------

inline CommandResult cmd_universal(const RunConfig& cfg) {
  const PerfectRing R = parse_perfect_ring(cfg.field);
  const FiniteRing A = parse_finite_ring(cfg.target);
  const auto r = universal_property_check(R, A);
  return {to_json(r), r.holds ? kVerified : kFalsified};
}

/// The tilt of the target; with --field also the correspondence
/// Hom(W_k(R), A) = Hom(R, tilt A).
inline CommandResult cmd_tilt(const RunConfig& cfg, bool with_field) {
  const FiniteRing A = parse_finite_ring(cfg.target);
  const std::uint32_t p = residue_prime(A);
  const Tilt t = tilt(A, p);
  CommandResult out;
  out.report = {{"target", A.name()},
                {"p", p},
                {"tilt", t.ring.name()},
                {"tilt_ring", ring_json(t.ring)},
                {"reduction", ring_json(t.reduction)},
                {"stabilization_index", t.stabilization_index},
                {"reduction_is_perfect", t.reduction_is_perfect}};
  if (with_field) {
    const auto r = tilt_correspondence_check(parse_perfect_ring(cfg.field), A);
    out.report["correspondence"] = to_json(r);
    out.exit_code = r.holds ? kVerified : kFalsified;
  }
  return out;
}

// ---------------------------------------------------------------------------
// tor / hochschild
// ---------------------------------------------------------------------------

/// Algebras: F<p>[x]/(x^<n>) with its residue field; F<p>[<R>] (the monoid
/// algebra of (R,·)) with R via the augmentation; <R'>-><R> with R via the
/// factor projection; <R> alone with R as the free module.
inline CommandResult cmd_tor(const RunConfig& cfg) {
  std::smatch m;
  const std::string& spec = cfg.algebra;
  std::optional<TorReport> r;
  bool perfect_surjection = true;
  if (std::regex_match(spec, m, std::regex(R"(F(\d+)\[x\]/\(x\^(\d+)\))"))) {
    const FpAlgebra A = truncated_polynomial_algebra(static_cast<std::uint32_t>(std::stoul(m[1])), std::stoul(m[2]));
    const FpModule k = residue_module(A);
    r = tor(A, k, k, cfg.imax);
    perfect_surjection = false;
  } else if (std::regex_match(spec, m, std::regex(R"(F(\d+)\[(.+)\])"))) {
    const std::uint32_t p = static_cast<std::uint32_t>(std::stoul(m[1]));
    const PerfectRing R = parse_perfect_ring(m[2]);
    if (R.characteristic() != p) throw std::invalid_argument("monoid algebra: characteristic of " + R.name() + " is not " + std::to_string(p));
    const FpAlgebra A = monoid_algebra_fp(R);
    const FpModule B = augmentation_module(A, R);
    r = tor(A, B, B, cfg.imax);
  } else if (auto arrow = spec.find("->"); arrow != std::string::npos) {
    const PerfectRing Rs = parse_perfect_ring(spec.substr(0, arrow));
    const PerfectRing R = parse_perfect_ring(spec.substr(arrow + 2));
    const FpAlgebra A = perfect_algebra(Rs);
    const FpModule B = module_via(A, Rs, R, factor_projection(Rs, R));
    r = tor(A, B, B, cfg.imax);
  } else {
    const PerfectRing R = parse_perfect_ring(spec);
    const FpAlgebra A = perfect_algebra(R);
    std::vector<PerfectRing::Element> id(R.size());
    for (PerfectRing::Element x = 0; x < R.size(); ++x) id[x] = x;
    const FpModule B = module_via(A, R, R, id);
    r = tor(A, B, B, cfg.imax);
  }
  CommandResult out{to_json(*r), kVerified};
  out.report["perfect_surjection"] = perfect_surjection;
  if (!r->tor0_matches || (perfect_surjection && !r->vanishing())) out.exit_code = kFalsified;
  return out;
}

inline CommandResult cmd_hochschild(const RunConfig& cfg) {
  const TorReport r = hochschild_check(parse_perfect_ring(cfg.field), cfg.imax);
  return {to_json(r), r.vanishing() && r.tor0_matches ? kVerified : kFalsified};
}

}  // namespace wittcd
