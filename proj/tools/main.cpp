// banachlab: finite-dimensional Banach space toolbox.
//
// Exit codes: 0 success, 2 usage or construction problem, 3 unsupported
// capability, 4 failed verification.

#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "banachlab/cantor.hpp"
#include "banachlab/engine.hpp"
#include "banachlab/errors.hpp"
#include "banachlab/index_search.hpp"
#include "banachlab/json_io.hpp"
#include "banachlab/lie.hpp"
#include "banachlab/numrange.hpp"
#include "banachlab/structure.hpp"

using namespace banachlab;

namespace {

struct Options {
  std::string space_file;
  std::string op_file;
  std::vector<std::string> part_files;
  std::string out;
  std::string format = "json";
  std::string kind = "l1";
  std::string mode = "zero";
  std::string ekind = "l2";
  double tol = std::nan("");
  int budget = 64;
  unsigned long seed = 0;
  int trials = 3;
  int level = 1;
  int m = 27;
  std::vector<int> m_list;
  double a = 0.0;
  double b = 1.0;
};

int g_exit = 0;

Space load_space(const Options& o) {
  if (o.space_file.empty()) throw UsageError("--space FILE is required");
  return space_from_json(parse_json(read_text_file(o.space_file)));
}

Operator load_op(const Options& o) {
  if (o.op_file.empty()) throw UsageError("--op FILE is required");
  return operator_from_json(parse_json(read_text_file(o.op_file)));
}

bool exact_capable(const detail::Node& n) {
  if (n.kind == detail::NodeKind::LpGen) return false;
  for (const auto& p : n.parts)
    if (!exact_capable(p)) return false;
  return true;
}

// Unset --tol resolves to 1e-9 where the engine certifies values and 1e-6
// where only sampled evaluation is available.
double resolve_tol(const Options& o, const Space& s) {
  if (!std::isnan(o.tol)) return o.tol;
  return exact_capable(s.node()) ? 1e-9 : 1e-6;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write file: " + o.out);
  f << text;
}

std::vector<std::complex<double>> circle_lambdas(const Operator& T) {
  if (T.domain().field() == Field::Real) return {{1.0, 0.0}, {-1.0, 0.0}};
  return {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
}

std::string grid_csv(const CantorGrid& g) {
  std::string s = "i,t,kind\n";
  char buf[64];
  for (int i = 0; i <= g.m; ++i) {
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%s\n", i, g.grid[i],
                  g.is_cantor[i] ? "cantor" : "gap");
    s += buf;
  }
  return s;
}

EKind parse_ekind(const std::string& s) {
  if (s == "l2") return EKind::L2;
  if (s == "constants") return EKind::Constants;
  if (s == "full") return EKind::Full;
  if (s == "zero") return EKind::Zero;
  throw UsageError("--ekind must be l2, constants, full or zero");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-dimensional Banach space toolbox"};
  app.require_subcommand(1);
  Options o;
  std::function<void()> action;

  auto add_common = [&o](CLI::App* c) {
    c->add_option("--out", o.out, "write output to a file instead of stdout");
    c->add_option("--format", o.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_budget = [&o](CLI::App* c) {
    c->add_option("--budget", o.budget, "sampling budget (default 64)");
  };
  auto add_tol = [&o](CLI::App* c) {
    c->add_option("--tol", o.tol,
                  "tolerance (default 1e-9 exact engines, 1e-6 sampled)");
  };
  auto add_seed = [&o](CLI::App* c) {
    c->add_option("--seed", o.seed, "random seed (default 0)");
  };

  // space ---------------------------------------------------------------
  CLI::App* space = app.add_subcommand("space", "space-level queries");
  space->require_subcommand(1);
  {
    CLI::App* c = space->add_subcommand("dual", "dual space descriptor");
    c->add_option("--space", o.space_file, "space JSON file")->required();
    add_common(c);
    c->callback([&] {
      action = [&] { emit(o, dump_json(space_to_json(dual_space(load_space(o))))); };
    });
  }
  {
    CLI::App* c = space->add_subcommand("extremes", "extreme points of the ball");
    c->add_option("--space", o.space_file, "space JSON file")->required();
    add_common(c);
    c->callback([&] {
      action = [&] { emit(o, dump_json(extremes_json(extreme_points(load_space(o))))); };
    });
  }
  {
    CLI::App* c = space->add_subcommand("pairs", "normalized duality pairs");
    c->add_option("--space", o.space_file, "space JSON file")->required();
    add_budget(c);
    add_common(c);
    c->callback([&] {
      action = [&] {
        Space s = load_space(o);
        emit(o, dump_json(to_json(duality_pairs(s, o.budget), s.field())));
      };
    });
  }

  // nr ------------------------------------------------------------------
  CLI::App* nr = app.add_subcommand("nr", "numerical range computations");
  nr->require_subcommand(1);
  {
    CLI::App* c = nr->add_subcommand("summary", "radius and real extent");
    c->add_option("--op", o.op_file, "operator JSON file")->required();
    add_budget(c);
    add_common(c);
    c->callback([&] {
      action = [&] { emit(o, dump_json(to_json(range_summary(load_op(o), o.budget)))); };
    });
  }
  {
    CLI::App* c = nr->add_subcommand("expformula",
                                     "exponential formula three-way check");
    c->add_option("--op", o.op_file, "operator JSON file")->required();
    add_budget(c);
    add_common(c);
    c->callback([&] {
      action = [&] { emit(o, dump_json(to_json(exp_formula(load_op(o), o.budget)))); };
    });
  }
  {
    CLI::App* c = nr->add_subcommand("daugavet", "Daugavet equation check");
    c->add_option("--op", o.op_file, "operator JSON file")->required();
    add_tol(c);
    add_budget(c);
    add_common(c);
    c->callback([&] {
      action = [&] {
        Operator T = load_op(o);
        double tol = resolve_tol(o, T.domain());
        DaugavetReport rep = check_daugavet(T, std::max(tol, 1e-12), o.budget);
        CircleReport circle =
            daugavet_circle_check(T, circle_lambdas(T), std::max(tol, 1e-12),
                                  o.budget);
        Json out = to_json(rep);
        out["circle"] = to_json(circle);
        emit(o, dump_json(out));
      };
    });
  }

  // lie -----------------------------------------------------------------
  CLI::App* lie = app.add_subcommand("lie", "isometry group tangent algebra");
  lie->require_subcommand(1);
  {
    CLI::App* c = lie->add_subcommand("basis", "tangent algebra basis");
    c->add_option("--space", o.space_file, "space JSON file")->required();
    add_tol(c);
    add_budget(c);
    add_common(c);
    c->callback([&] {
      action = [&] {
        Space s = load_space(o);
        emit(o, dump_json(to_json(lie_algebra_basis(s, resolve_tol(o, s), o.budget))));
      };
    });
  }
  {
    CLI::App* c = lie->add_subcommand("verify", "one-parameter group drift");
    c->add_option("--op", o.op_file, "operator JSON file")->required();
    add_tol(c);
    add_common(c);
    c->callback([&] {
      action = [&] {
        Operator T = load_op(o);
        SemigroupReport rep =
            semigroup_verify(T, {}, resolve_tol(o, T.domain()));
        emit(o, dump_json(to_json(rep)));
        if (!rep.isometric) g_exit = 4;
      };
    });
  }
  {
    CLI::App* c = lie->add_subcommand("classify", "skew/dissipative/hermitian");
    c->add_option("--op", o.op_file, "operator JSON file")->required();
    add_tol(c);
    add_budget(c);
    add_common(c);
    c->callback([&] {
      action = [&] {
        Operator T = load_op(o);
        double tol = resolve_tol(o, T.domain());
        Json out;
        out["skew_hermitian"] = ternary_name(is_skew_hermitian(T, tol, o.budget));
        try {
          out["dissipative"] = is_dissipative(T, tol, o.budget) ? "true" : "false";
        } catch (const CapabilityError&) {
          out["dissipative"] = "unknown";
        }
        if (T.domain().field() == Field::Complex) {
          try {
            out["hermitian"] = is_hermitian(T, tol, o.budget) ? "true" : "false";
          } catch (const CapabilityError&) {
            out["hermitian"] = "unknown";
          }
        } else {
          out["hermitian"] = "not_applicable";
        }
        emit(o, dump_json(out));
      };
    });
  }

  // index -----------------------------------------------------------------
  CLI::App* index = app.add_subcommand("index", "numerical index estimation");
  index->require_subcommand(1);
  {
    CLI::App* c = index->add_subcommand("estimate", "upper estimate and witness");
    c->add_option("--space", o.space_file, "space JSON file")->required();
    add_budget(c);
    add_seed(c);
    add_common(c);
    c->callback([&] {
      action = [&] {
        emit(o, dump_json(to_json(
                    numerical_index_estimate(load_space(o), o.budget, o.seed))));
      };
    });
  }
  {
    CLI::App* c = index->add_subcommand("dualcheck",
                                        "index of the dual vs the space");
    c->add_option("--space", o.space_file, "space JSON file")->required();
    c->add_option("--trials", o.trials, "independent searches (default 3)");
    add_tol(c);
    add_seed(c);
    add_common(c);
    c->callback([&] {
      action = [&] {
        Space s = load_space(o);
        double tol = std::isnan(o.tol) ? 2e-2 : o.tol;
        DualIndexReport rep = verify_dual_inequality(s, o.trials, o.seed, tol);
        emit(o, dump_json(to_json(rep)));
        if (!rep.consistent) g_exit = 4;
      };
    });
  }

  // sum -----------------------------------------------------------------
  CLI::App* sum = app.add_subcommand("sum", "direct sums and extensions");
  sum->require_subcommand(1);
  {
    CLI::App* c = sum->add_subcommand("build", "l1/linf sum of part spaces");
    c->add_option("--part", o.part_files, "part space JSON file (repeat)")
        ->required();
    c->add_option("--kind", o.kind, "sum kind: l1 or linf")
        ->check(CLI::IsMember({"l1", "linf"}));
    add_common(c);
    c->callback([&] {
      action = [&] {
        std::vector<Space> parts;
        for (const auto& f : o.part_files)
          parts.push_back(space_from_json(parse_json(read_text_file(f))));
        Space s = o.kind == "l1" ? l1_sum(parts) : linf_sum(parts);
        emit(o, dump_json(space_to_json(s)));
      };
    });
  }
  {
    CLI::App* c = sum->add_subcommand("extend",
                                      "extend an operator by a summand");
    c->add_option("--op", o.op_file, "operator JSON file")->required();
    c->add_option("--space", o.space_file, "summand space JSON file")
        ->required();
    c->add_option("--mode", o.mode, "zero or isometry")
        ->check(CLI::IsMember({"zero", "isometry"}));
    add_tol(c);
    add_common(c);
    c->callback([&] {
      action = [&] {
        Operator S = load_op(o);
        Space z = load_space(o);
        Operator ext = o.mode == "zero"
                           ? extend_by_zero(S, z)
                           : extend_isometry(S, z,
                                             std::isnan(o.tol) ? 1e-9 : o.tol);
        emit(o, dump_json(operator_to_json(ext)));
      };
    });
  }

  // cantor ----------------------------------------------------------------
  CLI::App* cantor = app.add_subcommand("cantor", "Cantor-grid example");
  cantor->require_subcommand(1);
  {
    CLI::App* c = cantor->add_subcommand("grid", "classified uniform grid");
    c->add_option("--level", o.level, "Cantor iterate k (default 1)");
    c->add_option("--m", o.m, "grid resolution (default 27)");
    add_common(c);
    c->callback([&] {
      action = [&] {
        CantorGrid g = cantor_grid(o.level, o.m);
        emit(o, o.format == "csv" ? grid_csv(g) : dump_json(to_json(g)));
      };
    });
  }
  {
    CLI::App* c = cantor->add_subcommand("build", "the planted space X(E)");
    c->add_option("--level", o.level, "Cantor iterate k (default 1)");
    c->add_option("--m", o.m, "grid resolution (default 27)");
    c->add_option("--ekind", o.ekind, "restriction space E")
        ->check(CLI::IsMember({"l2", "constants", "full", "zero"}));
    add_common(c);
    c->callback([&] {
      action = [&] {
        PLSpace pl = build_XE(parse_ekind(o.ekind), o.level, o.m);
        Json out;
        out["dim_x"] = pl.space.dim();
        out["dim_e"] = pl.dim_e;
        out["gap_nodes"] = pl.grid.gap_nodes;
        out["space"] = space_to_json(pl.space);
        emit(o, dump_json(out));
      };
    });
  }
  {
    CLI::App* c = cantor->add_subcommand("bump", "Urysohn hat inside (a, b)");
    c->add_option("--level", o.level, "Cantor iterate k (default 1)");
    c->add_option("--m", o.m, "grid resolution (default 27)");
    c->add_option("--a", o.a, "interval left end")->required();
    c->add_option("--b", o.b, "interval right end")->required();
    add_common(c);
    c->callback([&] {
      action = [&] {
        emit(o, dump_json(to_json(urysohn_bump(cantor_grid(o.level, o.m), o.a, o.b))));
      };
    });
  }
  {
    CLI::App* c = cantor->add_subcommand("quotient",
                                         "restriction-quotient isometry check");
    c->add_option("--level", o.level, "Cantor iterate k (default 1)");
    c->add_option("--m", o.m, "grid resolution (default 27)");
    c->add_option("--ekind", o.ekind, "restriction space E")
        ->check(CLI::IsMember({"l2", "constants", "full", "zero"}));
    add_tol(c);
    add_common(c);
    c->callback([&] {
      action = [&] {
        PLSpace pl = build_XE(parse_ekind(o.ekind), o.level, o.m);
        QuotientReport rep = quotient_isometry_check(
            pl, 64, std::isnan(o.tol) ? 1e-10 : o.tol);
        emit(o, dump_json(to_json(rep)));
        if (!rep.passed) g_exit = 4;
      };
    });
  }
  {
    CLI::App* c = cantor->add_subcommand("experiment",
                                         "resolution sweep of the main example");
    c->add_option("--level", o.level, "Cantor iterate k (default 1)");
    c->add_option("--m-list", o.m_list, "grid resolutions")->required();
    c->add_option("--ekind", o.ekind, "restriction space E")
        ->check(CLI::IsMember({"l2", "constants"}));
    add_budget(c);
    add_seed(c);
    add_common(c);
    c->callback([&] {
      action = [&] {
        std::vector<ExperimentRecord> recs = main_example_experiment(
            parse_ekind(o.ekind), o.level, o.m_list, o.budget, o.seed);
        emit(o, o.format == "csv" ? experiment_csv(recs)
                                  : dump_json(to_json(recs)));
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    action();
  } catch (const IsometryError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 4;
  } catch (const CheckError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 4;
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 3;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConstructionError& e) {
    std::cerr << "construction error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return g_exit;
}
