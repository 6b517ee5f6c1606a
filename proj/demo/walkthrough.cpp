// Runs Vinberg's algorithm on one lattice, prints the walls and the Coxeter
// graph in DOT, then decides chirality.
//
//   walkthrough "U+A2+A1+E8"
//   walkthrough demo/specs/u_a2_e8.json

#include <iostream>

#include "chiralat/chiralat.hpp"

int main(int argc, char** argv) {
  using namespace chiralat;
  const std::string expr = argc > 1 ? argv[1] : "U+A2+A1+E8";
  try {
    Lattice L = load_lattice(expr);
    std::cout << "lattice " << to_string(L.spec) << ", rank " << L.rank() << ", det " << determinant(L.gram) << "\n";

    VinbergRun run = vinberg_run(L);
    apply_reference_labels(run);
    for (std::size_t i = 0; i < run.accepted.size(); ++i)
      std::cout << "  " << run.labels[i] << "  level " << to_string(run.accepted[i].level) << "  norm "
                << run.accepted[i].root.norm << "  " << to_string(run.accepted[i].root.vec) << "\n";
    std::cout << status_name(run.termination.status) << " via " << run.termination.criterion << "\n\n";

    CoxeterGraph g = build_coxeter_graph(L, run.roots(), run.labels);
    std::cout << to_dot(g) << "\n";

    ChiralityVerdict v = classify_chirality(L, preset_chirality_options());
    std::cout << verdict_name(v.verdict) << ": " << v.reason << "\n";
    if (v.witness && !v.witness->black_label.empty())
      std::cout << "witness sends " << v.witness->black_label << " to " << v.witness->image_label << "\n";
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
