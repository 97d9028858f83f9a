// parabolica_cli: build arrangements and complexes, run verification suites,
// decide homotopy of gallery loops.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "parabolica/parabolica.hpp"

namespace fs = std::filesystem;
using namespace parabolica;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kCap = 3, kInconclusive = 4 };

struct Common {
  std::string type;
  std::string matrix_file;
  std::string out;
  std::size_t cell_cap = kDefaultCellCap;
  std::size_t coset_cap = kDefaultCosetCap;
};

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// First line n, then n rows of m(s,t); "inf" stands for infinity.
CoxeterMatrix parse_matrix_file(std::string const& path) {
  std::istringstream is(read_file(path));
  std::string raw;
  std::size_t line = 0;
  std::size_t n = 0;
  CoxeterMatrix m;
  auto fail = [&](std::string const& what) { return InvalidInput(path + ":" + std::to_string(line) + ": " + what); };
  while (std::getline(is, raw)) {
    ++line;
    std::istringstream ls(raw.substr(0, raw.find('#')));
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (n == 0) {
      if (toks.size() != 1) throw fail("expected the rank on its own line");
      try {
        n = std::stoul(toks[0]);
      } catch (std::exception const&) {
        throw fail("bad rank '" + toks[0] + "'");
      }
      if (n == 0) throw fail("rank must be positive");
      continue;
    }
    if (m.size() == n) throw fail("more than " + std::to_string(n) + " rows");
    if (toks.size() != n) throw fail("expected " + std::to_string(n) + " entries, got " + std::to_string(toks.size()));
    std::vector<int> row;
    for (auto const& t : toks) {
      if (t == "inf" || t == "infinity") {
        row.push_back(kInfinity);
        continue;
      }
      try {
        std::size_t used = 0;
        int const v = std::stoi(t, &used);
        if (used != t.size() || v < 1) throw std::invalid_argument(t);
        row.push_back(v);
      } catch (std::exception const&) {
        throw fail("bad entry '" + t + "'");
      }
    }
    m.push_back(std::move(row));
  }
  if (n == 0 || m.size() != n) throw InvalidInput(path + ": expected " + std::to_string(n) + " matrix rows");
  return m;
}

CoxeterSystem load_system(Common const& c) {
  if (c.type.empty() == c.matrix_file.empty()) throw InvalidInput("give exactly one of --type and --matrix-file");
  if (!c.type.empty()) return CoxeterSystem::from_type(c.type);
  return CoxeterSystem::from_matrix(parse_matrix_file(c.matrix_file));
}

std::string out_dir(Common const& c) {
  if (char const* env = std::getenv("PARABOLICA_OUT"); env && *env) return env;
  return c.out;
}

// Writes to <dir>/<name>, or to stdout when no directory is configured.
void emit(Common const& c, std::string const& name, std::string const& content) {
  std::string const dir = out_dir(c);
  if (dir.empty()) {
    std::cout << content;
    return;
  }
  fs::create_directories(dir);
  fs::path const path = fs::path(dir) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + path.string());
  f << content;
  std::cerr << "wrote " << path.string() << '\n';
}

std::string file_stem(CoxeterSystem const& sys) {
  std::string s = sys.display_name();
  for (auto& ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
  }
  return s;
}

int cmd_build(Common const& c, int k, std::vector<std::string> const& emits) {
  auto const g = make_group(load_system(c));
  std::string const stem = file_stem(g->system()) + "_k" + std::to_string(k);
  int const n = g->rank();
  if (k < 2 || k > n + 1) throw InvalidInput("--k must lie in 2.." + std::to_string(n + 1));
  for (auto const& what : emits) {
    if (what == "arrangement" || what == "lattice") {
      RootSystem const rs(g);
      auto const a = build_k_parabolic(rs, k);
      if (what == "arrangement") {
        emit(c, "arrangement_" + stem + ".json", arrangement_json(rs, a, k).dump(2) + "\n");
      } else {
        emit(c, "lattice_" + stem + ".json", lattice_json(rs, intersection_lattice(a), a.label).dump(2) + "\n");
      }
    } else if (what == "graph" || what == "presentation") {
      int const q = n - k + 1;
      if (q > n - 1 || q < 0) throw InvalidInput("level q = n-k+1 out of range");
      if (what == "graph") {
        emit(c, "graph_" + stem + ".dot", to_dot(QGraph(g, q)));
      } else {
        auto const p = pi1_presentation(TwoComplex(g, q, c.cell_cap));
        emit(c, "presentation_" + stem + ".txt", p.presentation.to_text());
      }
    } else {
      throw InvalidInput("unknown --emit value '" + what + "'");
    }
  }
  return kOk;
}

int cmd_verify(Common const& c, std::vector<std::string> const& suites, SuiteOptions const& opt,
               std::string const& format, bool timing) {
  auto const g = make_group(load_system(c));
  Report const rep = run_suites(g, suites, opt);
  std::string const body = format == "csv" ? rep.to_csv(timing) : rep.to_json(timing).dump(2) + "\n";
  emit(c, "report_" + file_stem(g->system()) + "." + format, body);
  std::cerr << "overall: " << to_string(rep.overall()) << '\n';
  return rep.exit_code();
}

int cmd_decide(Common const& c, std::string const& loops_path, std::string const& grid_path) {
  auto const g = make_group(load_system(c));
  auto const& sys = g->system();
  LoopPair loops;
  try {
    loops = parse_loop_file(*g, read_file(loops_path));
  } catch (InvalidInput const& e) {
    throw InvalidInput(loops_path + ": " + e.what());
  }
  if (!grid_path.empty()) {
    HomotopyGrid grid;
    try {
      grid = grid_from_text(*g, read_file(grid_path));
    } catch (InvalidInput const& e) {
      throw InvalidInput(grid_path + ": " + e.what());
    }
    auto const chk = check_certificate(*g, grid, loops.loop1, loops.loop2);
    if (chk.pass) {
      std::cout << "certificate valid: " << grid.height() << " rows, " << grid.width() << " columns\n";
      return kOk;
    }
    std::cout << "certificate invalid at row " << chk.row << ", column " << chk.col << ": " << chk.reason << '\n';
    return kFail;
  }
  auto const d = decide_homotopic(*g, loops.loop1, loops.loop2);
  if (!d.equivalent) {
    std::cout << "not equivalent\n"
              << "normal form 1: " << sys.format_word(d.normal_form1) << '\n'
              << "normal form 2: " << sys.format_word(d.normal_form2) << '\n';
    return kOk;
  }
  std::cout << "equivalent\n"
            << "normal form: " << sys.format_word(d.normal_form1) << '\n'
            << "moves:";
  for (auto const& m : d.script) std::cout << ' ' << to_string(m, sys);
  std::cout << '\n';
  auto const chk = check_certificate(*g, d.grid, loops.loop1, loops.loop2);
  if (!chk.pass) {
    std::cerr << "internal error: certificate fails at row " << chk.row << ": " << chk.reason << '\n';
    return kFail;
  }
  if (out_dir(c).empty()) std::cout << "certificate:\n";
  emit(c, "certificate_" + file_stem(sys) + ".grid", grid_to_text(*g, d.grid));
  return kOk;
}

void add_common(CLI::App* app, Common& c) {
  auto* type = app->add_option("--type", c.type, "Coxeter type label, e.g. A3, B3, H3, D4, I2(5), A1xA2");
  auto* mf = app->add_option("--matrix-file", c.matrix_file, "Coxeter matrix file (rank, then rows; inf for infinity)");
  type->excludes(mf);
  app->add_option("--out", c.out, "output directory (PARABOLICA_OUT overrides)");
  app->add_option("--cell-cap", c.cell_cap, "maximum number of 2-cells")->check(CLI::PositiveNumber);
  app->add_option("--coset-cap", c.coset_cap, "maximum number of cosets in the triviality probe")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-parabolic subspace arrangement workbench"};
  app.require_subcommand(1);

  Common common;
  int build_k = 3;
  std::vector<std::string> emits;
  auto* build = app.add_subcommand("build", "emit an arrangement, lattice, graph or presentation");
  add_common(build, common);
  build->add_option("--k", build_k, "arrangement parameter, 2 <= k <= n+1; the complex level is q = n-k+1");
  build->add_option("--emit", emits, "arrangement | lattice | graph | presentation")
      ->required()
      ->check(CLI::IsMember({"arrangement", "lattice", "graph", "presentation"}));

  std::vector<std::string> suites{"all"};
  SuiteOptions opt;
  int verify_k = 0;
  std::string format = "json";
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "run verification suites and write a report");
  add_common(verify, common);
  std::vector<std::string> allowed = suite_names();
  allowed.push_back("all");
  verify->add_option("--suite", suites, "suite name, repeatable, or all")->check(CLI::IsMember(allowed));
  verify->add_option("--k", verify_k, "restrict arrangement checks to this k; level for k4-triviality");
  verify->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_flag("--parallel", opt.parallel, "run suites concurrently");
  verify->add_flag("--timing", timing, "include per-check runtimes in the report");
  verify->add_option("--seed", opt.seed, "seed for sampled checks");

  std::string loops_path;
  std::string grid_path;
  auto* decide = app.add_subcommand("decide", "decide whether two gallery loops are homotopic");
  add_common(decide, common);
  decide->add_option("loops", loops_path, "loop file with loop1: and loop2: lines")->required();
  decide->add_option("--grid", grid_path, "re-validate this certificate grid instead of deciding");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*build) return cmd_build(common, build_k, emits);
    if (*verify) {
      if (verify_k != 0) opt.k = verify_k;
      opt.cell_cap = common.cell_cap;
      opt.coset_cap = common.coset_cap;
      return cmd_verify(common, suites, opt, format, timing);
    }
    if (*decide) return cmd_decide(common, loops_path, grid_path);
  } catch (CapExceeded const& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kCap;
  } catch (Inconclusive const& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  } catch (InvalidInput const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
