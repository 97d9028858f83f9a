#include <gtest/gtest.h>

#include <random>

#include "parabolica/serialize.hpp"
#include "parabolica/suites.hpp"

using namespace parabolica;

namespace {

GroupPtr group(char const* label) { return make_group(CoxeterSystem::from_type(label)); }

Record record(Status s) { return {"s", "n", "", "", "", s, "", 0}; }

}  // namespace

TEST(ArrangementJson, ExactStringsAndSchema) {
  RootSystem const rs(group("H3"));
  auto const a = build_k_parabolic(rs, 3);
  auto const j = arrangement_json(rs, a, 3);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["subspace_count"], 16);
  EXPECT_EQ(j["field"]["minimal_polynomial"], "z^2 - z - 1");
  EXPECT_EQ(j["field"]["value"], "2cos(pi/5)");
  bool irrational = false;
  for (auto const& s : j["subspaces"]) {
    EXPECT_EQ(s["codimension"], 2);
    for (auto const& row : s["basis"]) {
      for (auto const& x : row) {
        std::string const v = x.get<std::string>();
        EXPECT_EQ(v.find('.'), std::string::npos) << v;
        irrational = irrational || v.find('z') != std::string::npos;
      }
    }
  }
  EXPECT_TRUE(irrational);
}

TEST(LatticeJson, CoversReferToElements) {
  RootSystem const rs(group("A3"));
  auto const lat = intersection_lattice(build_k_parabolic(rs, 2));
  auto const j = lattice_json(rs, lat, "k=2");
  EXPECT_EQ(j["element_count"], 15);
  for (auto const& c : j["covers"]) {
    std::size_t const lo = c[0];
    std::size_t const hi = c[1];
    ASSERT_LT(hi, lat.size());
    EXPECT_EQ(lat.elements[lo].dimension(), lat.elements[hi].dimension() + 1);
  }
}

TEST(GridText, RoundTrip) {
  auto const a3 = group("A3");
  auto const loop = loop_of_word(*a3, a3->system().parse_word("s1 s3 s1 s3"));
  auto const d = decide_homotopic(*a3, loop, {1, {kBaseChamber}});
  ASSERT_TRUE(d.equivalent);
  std::string const text = grid_to_text(*a3, d.grid);
  auto const back = grid_from_text(*a3, text);
  EXPECT_EQ(back.q, d.grid.q);
  EXPECT_EQ(back.rows, d.grid.rows);
  EXPECT_EQ(grid_to_text(*a3, back), text);
}

TEST(GridText, Errors) {
  auto const a2 = group("A2");
  EXPECT_THROW(grid_from_text(*a2, "e | s1\n"), InvalidInput);
  EXPECT_THROW(grid_from_text(*a2, "q 0\n"), InvalidInput);
  try {
    grid_from_text(*a2, "q 0\ne | s1 | e\ne | e\n");
    FAIL();
  } catch (InvalidInput const& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  try {
    grid_from_text(*a2, "q 0\n\ne | s7\n");
    FAIL();
  } catch (InvalidInput const& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(LoopFile, ParsesBothForms) {
  auto const a2 = group("A2");
  auto const p = parse_loop_file(*a2, "# hexagon\nloop1: word s1 s2 s1 s2 s1 s2\nloop2: chambers e ; s1 ; e\n");
  EXPECT_EQ(p.loop1.chambers.size(), 7u);
  EXPECT_EQ(p.loop2.chambers, (Chain{0, a2->right(0, 0), 0}));
  EXPECT_EQ(p.loop1.q, 0);
}

TEST(LoopFile, ErrorsNameTheLine) {
  auto const a3 = group("A3");
  for (auto [text, line] : std::vector<std::pair<char const*, char const*>>{
           {"loop1: word s1\nloop2: word\n", "line 1"},
           {"loop1: word\nloop2: chambers e; s1 s2; e\n", "line 2"},
           {"loop1: word\n\nloop3: word\n", "line 3"},
           {"loop1: word\nloop1: word\n", "line 2"},
           {"loop1: path e\n", "line 1"},
           {"loop1: word s9\n", "line 1"}}) {
    try {
      parse_loop_file(*a3, text);
      FAIL() << text;
    } catch (InvalidInput const& e) {
      EXPECT_NE(std::string(e.what()).find(line), std::string::npos) << e.what();
    }
  }
  EXPECT_THROW(parse_loop_file(*a3, "loop1: word\n"), InvalidInput);
}

TEST(Report, OverallStatusAndExitCodes) {
  Report r{"A3", {}, {}};
  EXPECT_EQ(r.exit_code(), 0);
  r.records = {record(Status::pass), record(Status::skipped)};
  EXPECT_EQ(r.overall(), Status::pass);
  r.records.push_back(record(Status::inconclusive));
  EXPECT_EQ(r.overall(), Status::inconclusive);
  EXPECT_EQ(r.exit_code(), 4);
  r.records.push_back(record(Status::cap));
  EXPECT_EQ(r.exit_code(), 3);
  r.records.push_back(record(Status::fail));
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Report, CsvQuoting) {
  Report r{"A3", {"x"}, {{"x", "a\"b", "k=3", "1,2", "3", Status::pass, "", 0}}};
  EXPECT_NE(r.to_csv().find("\"a\"\"b\",\"k=3\",\"1,2\""), std::string::npos);
}

TEST(Suites, SkipsInapplicableChecksWithReasons) {
  auto const r = run_suites(group("A2"), {"theorem-3-3", "k4-triviality"}, {});
  ASSERT_EQ(r.records.size(), 2u);
  for (auto const& rec : r.records) {
    EXPECT_EQ(rec.status, Status::skipped);
    EXPECT_FALSE(rec.note.empty());
  }
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_THROW(run_suites(group("A2"), {"nonsense"}, {}), InvalidInput);
}

TEST(Suites, ParallelRunKeepsRecordOrder) {
  SuiteOptions opt;
  auto const a = run_suites(group("B3"), {"all"}, opt);
  opt.parallel = true;
  auto const b = run_suites(group("B3"), {"all"}, opt);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  EXPECT_EQ(a.overall(), Status::pass);
}

TEST(Suites, CapsAreReportedAsCaps) {
  SuiteOptions opt;
  opt.cell_cap = 3;
  auto const r = run_suites(group("A3"), {"k4-triviality"}, opt);
  EXPECT_EQ(r.records.back().status, Status::cap);
  EXPECT_EQ(r.exit_code(), 3);
}
