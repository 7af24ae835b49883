#include "zeroone/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zeroone/asv.hpp"
#include "zeroone/game.hpp"
#include "zeroone/harness.hpp"
#include "zeroone/inftyexpr.hpp"
#include "zeroone/interp.hpp"
#include "zeroone/poly.hpp"

namespace zeroone {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage:
    case ErrorKind::Parse: return 1;
    case ErrorKind::ResourceLimit: return 3;
    default: return 2;
  }
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// `@path` reads the formula from a file.
std::string formula_text(const std::string& arg) { return !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg; }

std::optional<Vocabulary> vocab_of(const std::string& arg) {
  if (arg.empty()) return std::nullopt;
  if (std::filesystem::is_regular_file(arg)) return Vocabulary::load(arg);
  return Vocabulary::parse_list(arg);
}

std::vector<std::string> list_of(const std::string& arg) {
  std::vector<std::string> out;
  std::stringstream ss(arg);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Common {
  std::string formula, semiring = "E", vocab, scope, cap;
  bool has_scope = false;

  Formula parse() const {
    auto v = vocab_of(vocab);
    std::string text = formula_text(formula);
    return v ? parse_formula(text, *v) : parse_formula(text);
  }
  Vocabulary vocabulary(const Formula& f) const {
    auto v = vocab_of(vocab);
    return v ? *v : infer_vocabulary(f);
  }
  std::optional<std::vector<std::string>> scope_vars() const {
    if (!has_scope) return std::nullopt;
    return list_of(scope);
  }
  std::string semiring_spec() const {
    if (cap.empty()) return semiring;
    if (semiring != "nat" && semiring != "natural") throw Error(ErrorKind::Usage, "--cap applies to the natural semiring only");
    return "nat:cap=" + cap;
  }
  Semiring ring() const { return Semiring::parse(semiring_spec()); }
};

void check_width(const Formula& f, const std::optional<std::vector<std::string>>& scope, int width) {
  if (width < 0) return;
  std::size_t root = scope ? scope->size() : free_variables(f).size();
  int need = scope_depth(f, root);
  if (width < need)
    throw Error(ErrorKind::Usage, "formula needs width " + std::to_string(need) + ", got --width " + std::to_string(width));
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semiring semantics, 0-1 laws and almost sure valuations for first-order logic"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "zeroone 1.0");

  Common c;
  int width = -1;
  std::string interp_path, type_path, check, dist = "uniform", assign, delta, gamma, plan_path;
  int k = 2;
  ExperimentPlan plan;
  std::string sizes;
  bool no_memo = false;

  auto add_formula = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("-f,--formula", c.formula, "formula text, or @file");
    if (required) o->required();
    sub->add_option("--vocab", c.vocab, "vocabulary file or list such as E/2,P/1");
  };
  auto add_scope = [&](CLI::App* sub) {
    sub->add_option("--scope", c.scope, "comma-separated variables x1..xk valued first")
        ->each([&](const std::string&) { c.has_scope = true; });
  };
  auto add_ring = [&](CLI::App* sub) {
    sub->add_option("-s,--semiring", c.semiring, "bool, E, minmax:a,b,.., lattice:<file>, viterbi, tropical, "
                                                 "tropicalinf, lukasiewicz, trunc:<n>, nat, natinf, realminmax")
        ->capture_default_str();
    sub->add_option("--cap", c.cap, "saturation cap for nat");
  };

  auto* eval = app.add_subcommand("eval", "evaluate a formula in a K-interpretation");
  add_formula(eval, true);
  eval->add_option("-i,--interp", interp_path, "interpretation file")->required();
  eval->add_option("-s,--semiring", c.semiring, "override the semiring named in the file");
  eval->add_option("-a,--assign", assign, "assignment such as x=0,y=3");

  auto* poly = app.add_subcommand("poly", "print the E-polynomial f_psi");
  add_formula(poly, true);
  add_scope(poly);
  poly->add_option("-w,--width", width, "variable width to check the formula against");

  auto* iexpr = app.add_subcommand("iexpr", "print the infinity-expression g_psi");
  add_formula(iexpr, true);
  add_scope(iexpr);
  iexpr->add_option("-w,--width", width, "variable width to check the formula against");

  auto* asv = app.add_subcommand("asv", "almost sure valuation of a sentence");
  add_formula(asv, true);
  add_ring(asv);
  asv->add_option("-d,--dist", dist, "uniform, weights:v=p,.., support:v=p,.., dyadic; optional bias=p")
      ->capture_default_str();

  auto* game = app.add_subcommand("game", "value of a formula on an atomic type by game search");
  add_formula(game, true);
  add_ring(game);
  add_scope(game);
  game->add_option("-t,--type", type_path, "atomic type file with E(x1,x2)=v lines");
  game->add_option("-c,--check", check, "decide whether the value equals this element");
  game->add_flag("--no-memo", no_memo, "disable memoisation");

  auto* ext = app.add_subcommand("extcheck", "check an extension property of an interpretation");
  ext->add_option("-i,--interp", interp_path, "interpretation file")->required();
  ext->add_option("-k", k, "number of variables")->capture_default_str();
  ext->add_option("--delta", delta, "(k,delta)-extension for lattice semirings");
  ext->add_option("--gamma", gamma, "strong (k,gamma)-extension for the natural semiring");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo runs over random K-interpretations");
  sim->add_option("--plan", plan_path, "plan file with key = value lines");
  add_formula(sim, false);
  add_ring(sim);
  sim->add_option("-d,--dist", dist, "distribution")->capture_default_str();
  sim->add_option("--sizes", sizes, "universe sizes, ascending (default 5,10,20,40)");
  sim->add_option("--trials", plan.trials, "trials per size")->capture_default_str();
  sim->add_option("--seed", plan.seed, "master seed")->capture_default_str();
  sim->add_option("--target", plan.target, "eq:v, interval:lo,hi, gt:v or ext:k[,delta=d|,gamma=g]");
  sim->add_option("-o,--out", plan.output, "CSV output path");
  sim->add_option("--threads", plan.threads, "worker threads, 0 for all cores");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "zeroone 1.0\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "UsageError: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*eval) {
      Semiring s = Semiring::parse(c.semiring);
      std::string text = read_file(interp_path);
      Interpretation pi = eval->count("--semiring") ? Interpretation::parse(text, &s) : Interpretation::parse(text);
      Formula f = c.vocab.empty() ? parse_formula(formula_text(c.formula), pi.vocab()) : c.parse();
      std::map<std::string, int> a;
      for (const auto& item : list_of(assign)) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Usage, "assignment '" + item + "' needs var=element");
        try {
          a[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
        } catch (const std::logic_error&) {
          throw Error(ErrorKind::Usage, "bad element in '" + item + "'");
        }
      }
      for (const auto& v : free_variables(f))
        if (!a.count(v)) throw Error(ErrorKind::UnboundVariable, "free variable " + v + " needs --assign");
      out << pi.semiring().format(evaluate(pi, f, a)) << "\n";
    } else if (*poly || *iexpr) {
      Formula f = c.parse();
      auto scope = c.scope_vars();
      check_width(f, scope, width);
      Vocabulary v = c.vocabulary(f);
      std::size_t root = scope ? scope->size() : free_variables(f).size();
      auto space = make_atom_space(v, std::max(1, scope_depth(f, root)));
      if (*poly) {
        out << to_string(build_epoly(f, v, scope), *space) << "\n";
      } else {
        out << to_string(build_infty(f, v, scope), space.get()) << "\n";
      }
    } else if (*asv) {
      Formula f = c.parse();
      Semiring s = c.ring();
      Distribution d = parse_distribution(dist);
      auto v = c.vocabulary(f);
      AsvResult r;
      if (s.kind() == SemiringKind::Natural || s.kind() == SemiringKind::NaturalInf) {
        r = asv_natural(f, resolve(d, s), v);
      } else if (s.is_lattice_kind()) {
        r = asv_lattice(f, resolve(d, s), v);
      } else if (s.is_absorptive()) {
        r = absorptive_transfer(f, s, d, v);
      } else {
        throw Error(ErrorKind::UnsupportedKind, "no almost sure valuation procedure for " + s.spec());
      }
      out << to_string(r, s) << "\n";
      if (!r.note.empty()) err << "note: " << r.note << "\n";
    } else if (*game) {
      Formula f = c.parse();
      Semiring s = c.ring();
      auto scope = c.scope_vars();
      std::vector<std::string> vars = scope ? *scope : free_variables(f);
      Vocabulary v = c.vocabulary(f);
      AtomicType rho = type_path.empty() ? AtomicType(v, s) : parse_atomic_type(read_file(type_path), v, s, vars.size());
      if (type_path.empty() && !vars.empty()) throw Error(ErrorKind::Usage, "open formulas need --type");
      GameConfig cfg;
      cfg.memo = !no_memo;
      if (check.empty()) {
        out << s.format(eval_game(f, rho, cfg, vars)) << "\n";
      } else {
        out << (decide(f, rho, s.parse_value(check), cfg, vars) ? "true" : "false") << "\n";
      }
    } else if (*ext) {
      Interpretation pi = Interpretation::load(interp_path);
      ExtensionReport r;
      if (!gamma.empty()) {
        r = check_strong_extension(pi, k, parse_rational(gamma));
      } else if (!delta.empty()) {
        r = check_k_delta_extension(pi, k, pi.semiring().parse_value(delta));
      } else {
        r = check_k_extension(pi, k);
      }
      out << (r.holds ? "true" : "false") << "\n";
      if (!r.holds && !r.detail.empty()) err << r.detail << "\n";
    } else if (*sim) {
      ExperimentPlan p = plan_path.empty() ? plan : load_plan(plan_path);
      if (!plan_path.empty()) {
        // flags given next to --plan take precedence
        if (sim->count("--formula")) p.formula = c.formula;
        if (sim->count("--semiring") || sim->count("--cap")) p.semiring = c.semiring_spec();
        if (sim->count("--dist")) p.distribution = dist;
        if (sim->count("--vocab")) p.vocab = c.vocab;
        if (sim->count("--trials")) p.trials = plan.trials;
        if (sim->count("--seed")) p.seed = plan.seed;
        if (sim->count("--target")) p.target = plan.target;
        if (sim->count("--out")) p.output = plan.output;
        if (sim->count("--threads")) p.threads = plan.threads;
      } else {
        p.formula = c.formula;
        p.semiring = c.semiring_spec();
        p.distribution = dist;
        p.vocab = c.vocab;
      }
      if (!p.formula.empty()) p.formula = formula_text(p.formula);
      if (!sizes.empty()) {
        p.sizes.clear();
        for (const auto& sz : list_of(sizes)) {
          try {
            p.sizes.push_back(std::stoi(sz));
          } catch (const std::logic_error&) {
            throw Error(ErrorKind::Usage, "bad size '" + sz + "'");
          }
        }
      }
      if (p.target.empty()) throw Error(ErrorKind::Usage, "simulate needs --target");
      out << report_csv(run_convergence(p));
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "Error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace zeroone
