#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace chiralat;

TEST(Io, RunDocumentRoundTrip) {
  Lattice L = build_lattice(parse_lattice_expression("-A1+A2+E8"));
  VinbergRun run = vinberg_run(L);
  apply_reference_labels(run);
  auto j = to_json(run);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"lattice", "base_point", "roots", "termination"}));
  VinbergRun back = run_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.lattice.gram, L.gram);
  ASSERT_EQ(back.accepted.size(), run.accepted.size());
  for (std::size_t i = 0; i < run.accepted.size(); ++i) {
    EXPECT_EQ(back.accepted[i].root, run.accepted[i].root);
    EXPECT_EQ(back.accepted[i].level, run.accepted[i].level);
  }
  EXPECT_EQ(back.labels, run.labels);
  EXPECT_EQ(back.termination.status, RunStatus::Terminated);
  EXPECT_EQ(to_json(back).dump(), j.dump());
}

TEST(Io, RejectsCorruptRuns) {
  auto good = to_json(vinberg_run(build_lattice(parse_lattice_expression("U+A2"))));
  auto bad = good;
  bad["roots"][0]["coords"][0] = 5;
  EXPECT_THROW(run_from_json(bad), invalid_input);
  bad = good;
  bad["roots"][1]["level_num"] = 7;
  EXPECT_THROW(run_from_json(bad), invalid_input);
  bad = good;
  bad.erase("base_point");
  EXPECT_THROW(run_from_json(bad), invalid_input);
  EXPECT_THROW(run_from_json(nlohmann::json::array()), invalid_input);
}

TEST(Io, VerdictDocument) {
  Lattice L = build_lattice(parse_lattice_expression("U+A2+A1+E8"));
  auto v = classify_chirality(L, preset_chirality_options());
  auto j = to_json(v, L);
  EXPECT_EQ(j["verdict"], "Achiral");
  EXPECT_EQ(j["witness"]["route"], "subset");
  EXPECT_EQ(j["witness"]["matrix"].size(), 13u);
  EXPECT_FALSE(j["vinberg_run"].is_null());
  auto u = to_json(classify_chirality(build_lattice(parse_lattice_expression("U(2)+E6(2)"))),
                   build_lattice(parse_lattice_expression("U(2)+E6(2)")));
  EXPECT_TRUE(u["witness"].is_null());
  EXPECT_EQ(u["reason"], "empty root system");
}

TEST(Io, LatticeArguments) {
  EXPECT_EQ(load_lattice("U+A2").rank(), 4u);
  EXPECT_EQ(load_lattice("[{\"kind\":\"U\"},{\"kind\":\"A\",\"n\":2}]").gram, load_lattice("U+A2").gram);
  EXPECT_THROW(load_lattice("missing.json"), invalid_input);
  EXPECT_THROW(load_lattice("U+Q"), invalid_input);
}
