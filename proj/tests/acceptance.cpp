// Acceptance suite: one PASS/FAIL line per criterion.  Exit status is
// nonzero if any blocking criterion fails; criterion 10 never blocks.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <csignal>
#include <iostream>

#include "oracles.hpp"

using namespace chiralat;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Lattice lat(const std::string& e) { return build_lattice(parse_lattice_expression(e)); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    pass = false;
    detail << " [" << why << "]";
  }
};

int failures = 0;

void report(int id, const std::string& name, Outcome& o, bool blocking = true) {
  std::cout << (o.pass ? "PASS" : (blocking ? "FAIL" : "MISS")) << " " << id << " " << name << ":" << o.detail.str()
            << std::endl;
  if (!o.pass && blocking) ++failures;
}

std::map<std::string, VinbergRun> runs;
std::map<std::string, double> run_seconds;

const VinbergRun& table_run(const std::string& id) {
  auto it = runs.find(id);
  if (it != runs.end()) return it->second;
  const auto& f = table_fixture(id);
  Lattice L = lat(f.lattice);
  auto t0 = Clock::now();
  VinbergRun run = vinberg_run(L, parse_components(L, f.base_point));
  run_seconds[id] = seconds_since(t0);
  apply_reference_labels(run);
  return runs.emplace(id, std::move(run)).first->second;
}

std::map<std::string, ChiralityVerdict> verdicts;
std::map<std::string, double> verdict_seconds;

const ChiralityVerdict& verdict(const std::string& e) {
  auto it = verdicts.find(e);
  if (it != verdicts.end()) return it->second;
  auto t0 = Clock::now();
  auto v = classify_chirality(lat(e), preset_chirality_options());
  verdict_seconds[e] = seconds_since(t0);
  return verdicts.emplace(e, std::move(v)).first->second;
}

IntVector fixture_vec(const std::string& id, const std::string& label) {
  for (const auto& r : expand_rows(table_fixture(id)))
    if (r.label == label) return r.vec;
  throw std::runtime_error("no fixture row " + label);
}

void criterion1() {
  Outcome o;
  for (const auto& f : table_fixtures()) {
    const auto& run = table_run(f.id);
    auto c = compare_with_fixture(run, f);
    double limit = (f.id == "T3" || f.id == "T6" || f.id == "T7") ? 600.0 : 5.0;
    o.detail << " " << f.id << "=" << c.matched.size() << "/" << expand_rows(f).size();
    if (!c.beyond.empty()) o.detail << "(+" << c.beyond.size() << " deeper)";
    o.detail << "@" << std::fixed << std::setprecision(2) << run_seconds[f.id] << "s";
    if (!c.ok()) o.fail(f.id + " differs from the table");
    if (run_seconds[f.id] > limit) o.fail(f.id + " over time budget");
  }
  report(1, "table-reproduction", o);
}

void criterion2() {
  Outcome o;
  for (const auto& f : table_fixtures()) {
    const auto& run = table_run(f.id);
    if (run.termination.status != RunStatus::Terminated) o.fail(f.id + " not terminated");
  }
  auto par = [&](const std::string& id, std::size_t rank, std::size_t pieces) {
    const auto& run = table_run(id);
    auto g = build_coxeter_graph(run.lattice, run.roots(), run.labels);
    const auto& mp = run.termination.maximal_parabolic;
    bool ok = mp.size() == 1 && classify_subdiagram(g, mp[0]) == SubdiagramClass{SubdiagramKind::Parabolic, rank} &&
              detail::components(g, mp[0]).size() == pieces && run.termination.criterion == "parabolic-cover";
    o.detail << " " << id << ":" << run.termination.criterion << ",max-parabolic rank " << rank;
    if (!ok) o.fail(id + " certificate differs");
  };
  par("T1", 2, 1);
  par("T2", 10, 2);
  const auto& r6 = table_run("T6");
  o.detail << " T6:" << r6.termination.criterion;
  if (r6.termination.criterion != "extension-count") o.fail("T6 not certified by extension count");
  std::size_t certified = 0;
  for (const auto& e : expected_verdicts()) {
    const auto& v = verdict(e.lattice);
    if (v.run && v.run->termination.status == RunStatus::Terminated) ++certified;
  }
  o.detail << " verdict-runs-terminated=" << certified << "/9 (rank-21 cases certified through the U+A2+2E8 run)";
  if (certified != 9) o.fail("some verdict rests on an unterminated run");
  report(2, "termination-certificates", o);
}

void criterion3() {
  Outcome o;
  const auto& run = table_run("T6");
  auto census = face_census(run, build_coxeter_graph(run.lattice, run.roots(), run.labels));
  o.detail << " (" << census.first << "," << census.second << ")";
  if (census != std::pair<std::size_t, std::size_t>{31, 2}) o.fail("expected (31,2)");
  report(3, "face-census", o);
}

void criterion4() {
  Outcome o;
  std::size_t hits = 0;
  for (const auto& e : expected_verdicts()) {
    const auto& v = verdict(e.lattice);
    double s = verdict_seconds[e.lattice];
    if (v.verdict == e.verdict)
      ++hits;
    else
      o.fail(e.lattice + " is " + std::string(verdict_name(v.verdict)));
    o.detail << " " << e.lattice << "=" << verdict_name(v.verdict) << "@" << std::fixed << std::setprecision(2) << s
             << "s";
  }
  o.detail << " match " << hits << "/9";
  report(4, "chirality-verdicts", o);
}

void criterion5() {
  Outcome o;
  {
    const auto& v = verdict("U+A2+2E8");
    const auto& run = table_run("T3");
    if (!v.witness) {
      o.fail("no witness for U+A2+2E8");
    } else {
      const auto& m = v.witness->matrix;
      bool maps = m * fixture_vec("T3", "v3") == fixture_vec("T3", "v8p");
      int d = delta3_sign(run.lattice, m);
      int z = z3_shortcut(run.lattice, run.roots(), v.witness->symmetry, m);
      o.detail << " U+A2+2E8: v3->v8p " << (maps ? "yes" : "no") << ", delta3 " << d << ", shortcut " << z;
      if (!maps || d != -1 || z != -1) o.fail("U+A2+2E8 witness");
    }
  }
  {
    const auto& v = verdict("U+A2+A1+E8");
    const auto& run = table_run("T7");
    if (!v.witness) {
      o.fail("no witness for U+A2+A1+E8");
    } else {
      const auto& m = v.witness->matrix;
      IntVector img = m * fixture_vec("T7", "v3");
      bool a2 = img[2] == -4 && img[3] == -2 && root_norm_of(run.lattice, img) == 6;
      int d = delta3_sign(run.lattice, m);
      int z = z3_shortcut(run.lattice, run.roots(), v.witness->symmetry, m);
      o.detail << " U+A2+A1+E8: A2 part of f(v3) = (" << img[2] << "," << img[3] << "), delta3 " << d << ", shortcut "
               << z;
      if (!a2 || d != -1 || z != -1) o.fail("U+A2+A1+E8 witness");
    }
  }
  report(5, "witness-checks", o);
}

void criterion6() {
  Outcome o;
  Lattice L = lat("E8");
  auto e8s = dual_basis_vector(L, 0, 7);
  auto e1s = dual_basis_vector(L, 0, 0);
  auto want = IntVector{2, 3, 4, 6, 5, 4, 3, 2};
  Rational n8 = inner_product(L, e8s, e8s), n1 = inner_product(L, e1s, e1s);
  o.detail << " e8*=" << to_string(*to_integer(e8s)) << " (e8*)^2=" << to_string(n8) << " (e1*)^2=" << to_string(n1);
  if (*to_integer(e8s) != want || n8 != 2 || n1 != 4) o.fail("E8 convention");
  report(6, "e8-self-check", o);
}

void criterion7() {
  Outcome o;
  std::mt19937 rng(2024);
  std::size_t grams = 0, comparisons = 0, mismatches = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (int t = 0; t < 16; ++t) {
      IntMatrix G = oracle::random_pd(rng, n, n <= 2 ? 3 : 2);
      for (long target = 0; target <= 8; ++target) {
        long b = oracle::box_bound(G, target);
        if (n == 4 && b > 6) continue;
        if (enumerate_short_vectors(G, target) != oracle::box_search(G, target, b)) ++mismatches;
        ++comparisons;
      }
      ++grams;
    }
  std::size_t e8 = enumerate_short_vectors(oracle::e8_cartan(), 2).size();
  o.detail << " grams=" << grams << " comparisons=" << comparisons << " mismatches=" << mismatches
           << " E8 norm-2=" << e8;
  if (grams < 50 || mismatches != 0 || e8 != 240) o.fail("enumeration oracle");
  report(7, "oracle-equivalence", o);
}

void criterion8() {
  Outcome o;
  std::size_t checked = 0, bad = 0;
  for (const auto& f : table_fixtures()) {
    const auto& run = table_run(f.id);
    const Lattice& L = run.lattice;
    const IntMatrix id = IntMatrix::identity(L.rank());
    for (const auto& a : run.accepted) {
      Isometry r = reflection_matrix(L, a.root.vec);
      bool ok = to_rational(r) == oracle::rational_reflection(L.gram, a.root.vec) && is_isometry(L, r) &&
                r * r == id && delta3_sign(L, r) == (a.root.norm == 2 ? 1 : -1);
      ++checked;
      if (!ok) ++bad;
    }
    if (delta3_sign(L, -id) != -1) ++bad;
  }
  o.detail << " reflections=" << checked << " failures=" << bad;
  if (bad) o.fail("reflection property");
  report(8, "reflection-delta3-suite", o);
}

void criterion9() {
  Outcome o;
  const auto& parent = verdict("U+A2+2E8");
  for (const auto& [e, route] : {std::pair<std::string, std::string>{"-A1+A2+2E8", "restriction"},
                                 std::pair<std::string, std::string>{"U+A2+2E8+A1", "extension"}}) {
    const auto& v = verdict(e);
    bool ok = v.verdict == Verdict::Achiral && v.witness && v.witness->route == route &&
              delta3_sign(lat(e), v.witness->matrix) == -1;
    o.detail << " " << e << "=" << verdict_name(v.verdict) << " via " << (v.witness ? v.witness->route : "none");
    if (!ok) o.fail(e + " reduction");
  }
  // The extension starts from the U+A2+2E8 witness itself.
  const auto& ext = verdict("U+A2+2E8+A1");
  if (parent.witness && ext.witness) {
    IntMatrix inner(20, 20);
    for (std::size_t r = 0; r < 20; ++r)
      for (std::size_t c = 0; c < 20; ++c) inner(r, c) = ext.witness->matrix(r, c);
    if (!(inner == parent.witness->matrix)) o.fail("extension does not start from the U+A2+2E8 witness");
  }
  // Direct route where affordable.
  for (const auto& [e, level] : {std::pair<std::string, long>{"-A1+A2+2E8", 192}, {"U+A2+2E8+A1", 48}}) {
    ChiralityOptions d = preset_chirality_options();
    d.reductions = false;
    d.max_level = level;
    auto v = classify_chirality(lat(e), d);
    o.detail << " direct " << e << " to level " << level << ": " << verdict_name(v.verdict);
    if (v.verdict == Verdict::Unknown)
      o.detail << " (" << v.reason << ", no comparison)";
    else if (v.verdict != Verdict::Achiral)
      o.fail("direct route disagrees for " + e);
  }
  report(9, "reduction-routes", o);
}

// Classification in a child process so a slow case can be abandoned.
std::optional<Verdict> classify_with_timeout(const std::string& e, unsigned seconds) {
  int fds[2];
  if (pipe(fds) != 0) return std::nullopt;
  pid_t pid = fork();
  if (pid == 0) {
    close(fds[0]);
    char c = 'U';
    try {
      auto v = classify_chirality(lat(e), preset_chirality_options());
      c = v.verdict == Verdict::Achiral ? 'A' : v.verdict == Verdict::Chiral ? 'C' : 'U';
    } catch (...) {
    }
    [[maybe_unused]] auto w = write(fds[1], &c, 1);
    _exit(0);
  }
  close(fds[1]);
  auto t0 = Clock::now();
  int status = 0;
  while (waitpid(pid, &status, WNOHANG) == 0) {
    if (seconds_since(t0) > seconds) {
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      close(fds[0]);
      return std::nullopt;
    }
    usleep(20000);
  }
  char c = 'U';
  if (read(fds[0], &c, 1) != 1) c = 'U';
  close(fds[0]);
  if (c == 'A') return Verdict::Achiral;
  if (c == 'C') return Verdict::Chiral;
  return Verdict::Unknown;
}

void criterion10() {
  Outcome o;
  for (const auto& e : achiral_extras()) {
    auto v = classify_with_timeout(e, 1800);
    o.detail << " " << e << "=" << (v ? verdict_name(*v) : "Unknown(timeout)");
    if (!v || *v != Verdict::Achiral) o.fail(e);
  }
  report(10, "stretch-extras", o, false);
}

}  // namespace

int main() {
  try {
    criterion10();  // forks; run before any threads or caches exist
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance aborted: " << e.what() << std::endl;
    return 1;
  }
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << failures << " blocking failure(s)" << std::endl;
  return failures ? 1 : 0;
}
