// Command-line front end: vinberg, coxeter, classify, tables.

#include <CLI11.hpp>
#include <iostream>

#include "chiralat/chiralat.hpp"

using namespace chiralat;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kExhausted = 2;
constexpr int kUnknown = 3;
constexpr int kMismatch = 4;

// "T3" resolves to the lattice of that table; anything else goes to
// load_lattice.
Lattice resolve_lattice(const std::string& arg) {
  for (const auto& f : table_fixtures())
    if (f.id == arg) return build_lattice(parse_lattice_expression(f.lattice));
  return load_lattice(arg);
}

IntVector parse_int_list(const std::string& text) {
  IntVector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(Integer(item));
    } catch (const std::exception&) {
      throw invalid_input("bad integer '" + item + "'");
    }
  }
  return v;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_file(out, text);
}

std::string describe(const VinbergRun& run) {
  std::ostringstream os;
  os << to_string(run.lattice.spec) << ": " << run.accepted.size() << " walls, "
     << status_name(run.termination.status);
  if (run.termination.status == RunStatus::Terminated) os << " (" << run.termination.criterion << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// tables

void print_roots(std::ostream& os, const std::vector<ExpectedRoot>& rs, const char* tag) {
  for (const auto& r : rs) os << "  " << tag << " " << r.label << " level " << to_string(r.level) << " " << to_string(r.vec) << "\n";
}

bool table_report(const TableFixture& f, std::ostream& os) {
  Lattice L = build_lattice(parse_lattice_expression(f.lattice));
  IntVector p = parse_components(L, f.base_point);
  VinbergRun run = vinberg_run(L, p);
  apply_reference_labels(run);
  auto c = compare_with_fixture(run, f);
  std::map<Rational, std::size_t> hist;
  for (const auto& m : c.matched) ++hist[m.level];
  os << f.id << " " << f.lattice << ": " << (c.ok() ? "match" : "MISMATCH") << ", " << c.matched.size()
     << " roots with levels {";
  bool first = true;
  for (const auto& [lvl, n] : hist) {
    os << (first ? "" : ", ") << to_string(lvl) << "x" << n;
    first = false;
  }
  os << "}\n";
  print_roots(os, c.missing, "missing");
  print_roots(os, c.unexpected, "unexpected");
  if (!c.beyond.empty()) {
    os << "  " << c.beyond.size() << " further walls beyond the last tabulated level " << to_string(c.last_level) << ":\n";
    print_roots(os, c.beyond, "beyond");
  }
  os << "  run: " << describe(run) << "\n";
  return c.ok();
}

bool verdict_report(const std::string& group, std::ostream& os) {
  bool ok = true;
  for (const auto& e : expected_verdicts()) {
    if (!group.empty() && e.group != group) continue;
    Lattice L = build_lattice(parse_lattice_expression(e.lattice));
    auto v = classify_chirality(L, preset_chirality_options());
    bool hit = v.verdict == e.verdict;
    ok = ok && hit;
    os << e.group << " " << e.lattice << ": " << verdict_name(v.verdict) << " (expected " << verdict_name(e.verdict)
       << ") " << (hit ? "match" : "MISMATCH") << "; " << v.reason << "\n";
  }
  return ok;
}

bool catalog_report(const std::vector<std::string>& lattices, const std::string& id, std::ostream& os) {
  bool ok = true;
  os << id << ": lattice rho r d |discr| det signature\n";
  for (const auto& expr : lattices) {
    CatalogEntry e = catalog_entry(expr);
    Lattice L = build_lattice(parse_lattice_expression(expr));
    DiscriminantGroup D3 = primary_part(discriminant_group(L), 3);
    bool z3 = D3.generators.size() == 1 && D3.generators[0].order == 3;
    bool good = e.discr_order == abs(e.det) && e.sig.negative == 1 && z3;
    ok = ok && good;
    os << "  " << expr << " " << e.rho << " " << e.r << " " << e.d << " " << e.discr_order << " " << e.det << " ("
       << e.sig.positive << "," << e.sig.negative << ")" << (good ? "" : "  CHECK FAILED") << "\n";
  }
  return ok;
}

bool grid_report(std::ostream& os) {
  bool ok = true;
  os << "grid10: (r,d) cells of the principal series\n";
  std::set<std::string> asserted;
  std::map<std::string, Verdict> known;
  for (const auto& e : expected_verdicts()) known[e.lattice] = e.verdict;
  for (const auto& x : achiral_extras()) known.emplace(x, Verdict::Achiral);
  for (const auto& expr : catalog_principal()) {
    CatalogEntry e = catalog_entry(expr);
    auto mark = grid_mark(e.r, e.d);
    os << "  " << expr << " r=" << e.r << " d=" << e.d << " cell=" << (mark ? std::string(1, *mark) : "-");
    auto it = known.find(expr);
    if (it != known.end()) {
      char want = it->second == Verdict::Achiral ? 'a' : 'c';
      bool hit = mark && *mark == want;
      ok = ok && hit;
      asserted.insert(expr);
      os << " expected=" << want << (hit ? " match" : " MISMATCH");
    }
    os << "\n";
  }
  for (const auto& [expr, v] : known)
    if (!asserted.count(expr)) os << "  " << expr << " is outside the principal series; not asserted\n";
  return ok;
}

int cmd_tables(const std::string& which) {
  bool ok = true;
  auto& os = std::cout;
  auto tables = [&](const std::string& id) { ok = table_report(table_fixture(id), os) && ok; };
  if (which.size() == 2 && which[0] == 'T') {
    tables(which);
  } else if (which == "verdicts" || which == "verdicts6" || which == "verdicts7") {
    ok = verdict_report(which == "verdicts" ? "" : which, os);
  } else if (which == "catalog8") {
    ok = catalog_report(catalog_principal(), which, os);
  } else if (which == "catalog9") {
    ok = catalog_report(catalog_additional(), which, os);
  } else if (which == "grid10") {
    ok = grid_report(os);
  } else if (which == "all") {
    for (const auto& f : table_fixtures()) tables(f.id);
    ok = verdict_report("", os) && ok;
    ok = catalog_report(catalog_principal(), "catalog8", os) && ok;
    ok = catalog_report(catalog_additional(), "catalog9", os) && ok;
    ok = grid_report(os) && ok;
  }
  return ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vinberg chambers, Coxeter graphs and chirality of lattices"};
  app.require_subcommand(1, 1);

  std::string lattice, out, base, subset = "auto", run_path, dot_path, which;
  long max_level = 300;
  bool no_reductions = false;

  auto* vin = app.add_subcommand("vinberg", "run Vinberg's algorithm and write the run document");
  vin->add_option("--lattice", lattice, "expression, JSON spec, spec file, or T1..T7")->required();
  vin->add_option("--max-level", max_level, "highest level searched")->check(CLI::NonNegativeNumber);
  vin->add_option("--base-point", base, "comma-separated coordinates");
  vin->add_option("--out", out, "output path (stdout if omitted)");

  auto* cox = app.add_subcommand("coxeter", "render the Coxeter graph of a run document");
  cox->add_option("--run", run_path, "run document")->required();
  cox->add_option("--dot", dot_path, "output path (stdout if omitted)");

  auto* cls = app.add_subcommand("classify", "decide chirality");
  cls->add_option("--lattice", lattice, "expression, JSON spec, spec file, or T1..T7")->required();
  cls->add_option("--subset", subset, "symmetric subsets to try")->check(CLI::IsMember({"auto", "preset", "none"}));
  cls->add_option("--max-level", max_level, "highest level searched")->check(CLI::NonNegativeNumber);
  cls->add_flag("--no-reductions", no_reductions, "skip the A1 reduction routes");
  cls->add_option("--out", out, "output path (stdout if omitted)");

  auto* tab = app.add_subcommand("tables", "recompute reference tables and compare");
  std::vector<std::string> ids{"verdicts", "verdicts6", "verdicts7", "catalog8", "catalog9", "grid10", "all"};
  for (const auto& f : table_fixtures()) ids.push_back(f.id);
  tab->add_option("--which", which, "T1..T7, verdicts, catalog8, catalog9, grid10 or all")
      ->required()
      ->check(CLI::IsMember(ids));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*vin) {
      Lattice L = resolve_lattice(lattice);
      VinbergOptions o;
      o.max_level = Rational(max_level);
      IntVector p = base.empty() ? default_base_point(L) : parse_int_list(base);
      if (const TableFixture* f = fixture_for(L); f && base.empty()) p = parse_components(L, f->base_point);
      VinbergRun run = vinberg_run(L, p, o);
      apply_reference_labels(run);
      emit(out, to_json(run).dump(2) + "\n");
      std::cerr << describe(run) << "\n";
      return run.termination.status == RunStatus::Terminated ? kOk : kExhausted;
    }
    if (*cox) {
      VinbergRun run;
      try {
        run = run_from_json(nlohmann::json::parse(read_file(run_path)));
      } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("corrupt run document: ") + e.what());
      }
      if (run.accepted.empty()) throw invalid_input("run document has no roots");
      CoxeterGraph g = build_coxeter_graph(run.lattice, run.roots(), run.labels);
      emit(dot_path, to_dot(g));
      return kOk;
    }
    if (*cls) {
      Lattice L = resolve_lattice(lattice);
      ChiralityOptions o = preset_chirality_options();
      o.subset = subset;
      o.max_level = Rational(max_level);
      o.reductions = !no_reductions;
      ChiralityVerdict v = classify_chirality(L, o);
      emit(out, to_json(v, L).dump(2) + "\n");
      std::cerr << to_string(L.spec) << ": " << verdict_name(v.verdict) << " (" << v.reason << ")\n";
      return v.verdict == Verdict::Unknown ? kUnknown : kOk;
    }
    if (*tab) return cmd_tables(which);
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
