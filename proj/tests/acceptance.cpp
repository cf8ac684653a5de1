// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "wittcd/wittcd.hpp"

using namespace wittcd;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) why << what;
      ok = false;
    }
  }
};

struct CliRun {
  std::string out;
  int code = -1;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + WITTCD_EXE + "\" " + args + " 2>/dev/null";
  CliRun r;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  const int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 1. integrality of the universal polynomials and the ghost identities
void witt_polynomials(Check& c) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (unsigned n = 1; n <= 4; ++n) {
      const std::string at = " p=" + std::to_string(p) + " n=" + std::to_string(n);
      try {
        const WittPolyCache w = universal_polys(p, n);
        c.expect(w.sum.size() == n && w.product.size() == n, "wrong length at" + at);
        const auto failures = ghost_identity_failures(w);
        c.expect(failures.empty(), "ghost identity fails at" + at);
      } catch (const std::exception& e) {
        c.expect(false, std::string(e.what()) + at);
      }
    }
}

// 2. W_n(F_p) against Z/p^n
void prime_field_witt(Check& c) {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (unsigned n = 1; n <= 3; ++n) {
      const auto r = oracle_match_exhaustive(p, 1, n);
      c.expect(r.matched(), "mismatch at p=" + std::to_string(p) + " n=" + std::to_string(n));
      c.expect(GaloisRing(p, 1, n).as_finite_ring().invariant_factors().size() == 1, "Galois ring with k = 1 is not cyclic");
    }
}

// 3. Witt vectors of F_{p^k} against the Galois ring
void galois_oracle(Check& c) {
  const std::vector<std::tuple<std::uint32_t, unsigned, unsigned>> exhaustive = {
      {2, 1, 1}, {2, 1, 2}, {2, 1, 3}, {2, 2, 1}, {2, 2, 2}, {3, 1, 1}, {3, 1, 2}, {3, 2, 1}};
  for (auto [p, k, n] : exhaustive) {
    const auto r = oracle_match_exhaustive(p, k, n);
    c.expect(r.matched(), "exhaustive mismatch at (" + std::to_string(p) + "," + std::to_string(k) + "," +
                              std::to_string(n) + ")");
  }
  const auto r = oracle_match_random(2, 2, 3, 10000, 20240601);
  c.expect(r.matched() && r.checks >= 10000, "randomized mismatch at (2,2,3)");
}

// 4. R = F_2: every level is an isomorphism onto Z/2^n
void exact_case(Check& c) {
  const auto rep = pro_isomorphism_report(parse_perfect_ring("F2"), 8);
  c.expect(rep.verdict == "verified", "verdict " + rep.verdict);
  c.expect(rep.level_reports.size() == 8, "expected 8 levels");
  for (const auto& L : rep.level_reports) {
    const std::string at = " at n=" + std::to_string(L.n);
    c.expect(L.source_factors == IntVector{BigInt(1) << L.n}, "source is not Z/2^n" + at);
    c.expect(L.target_order == (BigInt(1) << L.n), "target is not of order 2^n" + at);
    c.expect(L.well_defined && L.is_ring_map && L.surjective && L.recovers_augmentation, "map fails" + at);
    c.expect(L.kernel_order == 1, "nonzero kernel" + at);
    if (L.well_defined_witt) c.expect(*L.well_defined_witt, "Witt arithmetic disagrees" + at);
  }
}

// 5. F_3 and F_4: well defined, surjective, kernels die within the cap
void pro_isomorphism(Check& c) {
  for (const char* spec : {"F3", "F4"}) {
    const auto rep = pro_isomorphism_report(parse_perfect_ring(spec), 6, 3);
    c.expect(rep.verdict == "verified", std::string(spec) + " verdict " + rep.verdict);
    for (const auto& L : rep.level_reports) {
      const std::string at = std::string(" for ") + spec + " at n=" + std::to_string(L.n);
      c.expect(L.well_defined, "not well defined" + at);
      c.expect(L.surjective, "not surjective" + at);
      if (L.n <= 3) c.expect(L.killed_at_m && *L.killed_at_m <= 6, "kernel survives" + at);
    }
  }
}

// 6. the four module conditions agree on every enumerated action
void module_equivalence(Check& c) {
  for (const char* spec : {"F2", "F3", "F4"}) {
    const PerfectRing R = parse_perfect_ring(spec);
    const std::uint32_t p = R.characteristic();
    unsigned e = 0;
    for (std::uint64_t q = p; q <= 16; q *= p) ++e;
    ClassifierContext ctx(R);
    std::size_t modules = 0, disagreements = 0;
    for (const auto& d : abelian_p_groups(p, e))
      for (const auto& M : enumerate_actions(R, d)) {
        ++modules;
        if (!classify(M, ctx).agree()) ++disagreements;
      }
    c.expect(modules > 0, std::string("no modules for ") + spec);
    c.expect(disagreements == 0, std::to_string(disagreements) + " disagreements for " + spec);
  }
}

// 7. Tor over F_p[R] vanishes; F_2[x]/(x^2) is the negative control
void tor_vanishing(Check& c) {
  for (const char* spec : {"F2", "F3", "F4"}) {
    const PerfectRing R = parse_perfect_ring(spec);
    const FpAlgebra A = monoid_algebra_fp(R);
    const FpModule M = augmentation_module(A, R);
    const auto r = tor(A, M, M, 2);
    c.expect(r.betti[1] == 0 && r.betti[2] == 0, std::string("Tor nonzero for ") + spec);
    c.expect(r.tor0_matches, std::string("Tor_0 mismatch for ") + spec);
  }
  const FpAlgebra D = truncated_polynomial_algebra(2, 2);
  const auto r = tor(D, residue_module(D), residue_module(D), 3);
  c.expect(r.betti[1] == 1 && r.betti[2] == 1 && r.betti[3] == 1, "control Betti numbers are not 1");
  c.expect(r.verdict() == "nonvanishing", "control reported as vanishing");
}

// 8. Hochschild Tor of F_2 and F_4
void hochschild(Check& c) {
  for (const char* spec : {"F2", "F4"}) {
    const auto r = hochschild_check(parse_perfect_ring(spec), 2);
    c.expect(r.betti[1] == 0 && r.betti[2] == 0, std::string("Tor nonzero for ") + spec);
  }
}

std::vector<std::pair<PerfectRing, FiniteRing>> hom_pairs() {
  const PerfectRing F2 = parse_perfect_ring("F2"), F4 = parse_perfect_ring("F4");
  const FiniteRing dual({2, 2}, {{1, 0}, {0, 1}, {0, 1}, {0, 0}}, {1, 0}, "F2[e]/(e^2)");
  return {{F2, FiniteRing::integers_mod(4)},
          {F2, FiniteRing::integers_mod(8)},
          {F2, dual},
          {F4, WittRing(F4, 2).as_finite_ring()},
          {F4, FiniteRing::integers_mod(4)}};
}

// 9. ring maps out of W_k(R) against multiplicative maps out of R
void universal_property(Check& c) {
  for (const auto& [R, A] : hom_pairs()) {
    const auto r = universal_property_check(R, A);
    const std::string at = " for (" + R.name() + ", " + A.name() + ")";
    c.expect(r.holds, "fails" + at + ": " + r.counterexample);
    c.expect(r.bijection.size() == r.witt_homs.size() && r.witt_homs.size() == r.monoid_maps.size(),
             "not a bijection" + at);
  }
}

// 10. ring maps out of W_k(R) against ring maps into the tilt
void tilt_correspondence(Check& c) {
  const auto pairs = hom_pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [R, A] = pairs[i];
    const auto r = tilt_correspondence_check(R, A);
    c.expect(r.holds, "fails for (" + R.name() + ", " + A.name() + "): " + r.counterexample);
    if (i == 3) c.expect(r.witt_homs.size() == 2 && r.tilt_homs.size() == 2, "expected two maps on each side for W2(F4)");
  }
}

// 11. F∘V = p, τ multiplicative, digits round trip, on every Witt ring of order <= 2^12
void witt_operators(Check& c) {
  std::size_t rings = 0;
  for (const char* spec : {"F2", "F3", "F4", "F5", "F7", "F8", "F9", "F16", "F25", "F27", "F2xF2", "F2xF4", "F3xF3"}) {
    const PerfectRing R = parse_perfect_ring(spec);
    const std::uint32_t p = R.characteristic();
    for (unsigned n = 1; polynomial_engine_feasible(p, n); ++n) {
      std::uint64_t size = 1;
      for (unsigned i = 0; i < n; ++i) size *= R.size();
      if (size > 4096) break;
      ++rings;
      const WittRing W(R, n);
      const std::string at = " in " + W.name();
      for (std::uint64_t v = 0; v < W.size(); ++v) {
        const WittVector x = W.element(v);
        c.expect(W.frobenius(W.verschiebung(x)) == W.multiply_int(x, p), "F∘V != p" + at);
        c.expect(W.from_digits(W.digits(x)) == x, "digit round trip fails" + at);
      }
      for (PerfectRing::Element r = 0; r < R.size(); ++r)
        for (PerfectRing::Element s = 0; s < R.size(); ++s)
          c.expect(W.teichmuller(R.mul(r, s)) == W.mul(W.teichmuller(r), W.teichmuller(s)), "τ not multiplicative" + at);
    }
  }
  c.expect(rings >= 20, "too few rings checked");
}

// 12. byte-identical CLI output and bit-exact cache revalidation
void determinism(Check& c) {
  const fs::path dir = fs::temp_directory_path() / ("wittcd-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  setenv("WITTCD_CACHE_DIR", dir.c_str(), 1);

  const std::vector<std::string> commands = {
      "oracle --prime 2 --degree 2 --level 3 --seed 7",
      "oracle --prime 3 --degree 1 --level 2",
      "cd-verify --field F4 --cap 4",
      "cd-verify --field F3 --cap 6 --levels 3",
      "cd-verify --field F2 --cap 4 --source F4",
      "module-classify --field F2 --group 2,4 --list",
      "module-classify --field F3 --enumerate --max-group 9",
      "universal --field F4 --target W2F4",
      "tilt --field F4 --target Z4",
      "tilt --target 'F2[e]/(e^2)'",
      "tor --algebra 'F2[x]/(x^2)' --imax 3",
      "tor --algebra 'F2[F4]' --imax 2",
      "hochschild --field F4 --imax 2",
      "--format text cd-verify --field F2 --cap 3",
  };
  for (const auto& cmd : commands) {
    const CliRun a = run_cli(cmd), b = run_cli(cmd);
    c.expect(!a.out.empty() && a.code >= 0, "no output from: " + cmd);
    c.expect(a.out == b.out && a.code == b.code, "output differs between runs of: " + cmd);
  }

  // generation from an empty cache is itself deterministic
  const std::string polys = "witt-polys --prime 3 --level 3";
  const CliRun g1 = run_cli(polys);
  const std::string file1 = slurp(cache_file_path(dir, 3, 3));
  fs::remove_all(dir);
  const CliRun g2 = run_cli(polys);
  c.expect(g1.code == 0 && g1.out == g2.out, "cache generation is not deterministic");
  c.expect(file1 == slurp(cache_file_path(dir, 3, 3)), "cache files differ between generations");
  c.expect(file1 == serialize_cache(universal_polys(3, 3)), "cache file differs from the in-process polynomials");

  const CliRun v1 = run_cli(polys), v2 = run_cli(polys);
  c.expect(v1.code == 0 && v1.out == v2.out, "revalidation is not deterministic");
  c.expect(v1.out.find("\"status\": \"ok\"") != std::string::npos, "cache did not revalidate");

  {
    std::ofstream f(cache_file_path(dir, 3, 3), std::ios::app);
    f << "tampered\n";
  }
  const CliRun bad = run_cli(polys);
  c.expect(bad.code == 1 && bad.out.find("\"status\": \"corrupt\"") != std::string::npos, "corruption not detected");
  fs::remove_all(dir);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"Witt polynomial integrality and ghost identities", witt_polynomials},
      {"W_n(F_p) = Z/p^n", prime_field_witt},
      {"W_n(F_q) against the Galois ring", galois_oracle},
      {"F_2 tower is an isomorphism for n <= 8", exact_case},
      {"F_3 and F_4 towers are pro-isomorphic", pro_isomorphism},
      {"module conditions agree on groups of order <= 16", module_equivalence},
      {"Tor over F_p[R] vanishes", tor_vanishing},
      {"Hochschild Tor vanishes", hochschild},
      {"universal property bijections", universal_property},
      {"tilt correspondence", tilt_correspondence},
      {"Witt operator identities", witt_operators},
      {"CLI determinism and cache revalidation", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu  %-52s %8.2fs%s%s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                c.ok ? "" : "  ", c.why.str().c_str());
    std::fflush(stdout);
    failed += !c.ok;
  }
  return failed == 0 ? 0 : 1;
}
