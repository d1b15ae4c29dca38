// qgd: batch verification harness and calculator for the q-deformed
// Gelfand-Dickey structures.
//
//   qgd verify --suite all --q 1/2 --n 2,3 --depth 8 --digits 40 --seed 42 --report out.json
//   qgd root --input op.json --n 2 --depth 8
//   qgd flow --op op.json --m 3
//   qgd bracket --spec quadratic|coordinate|linear|pencil:A --phi "zeta(1,0)" --psi "zeta(1,1)" --op op.json --n 2

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qgd/suites.hpp"

using namespace qgd;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

std::vector<int> parse_ns(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw CLI::ValidationError("--n", "needs at least one order");
  return out;
}

/// "zeta(i,j)", "3/2*zeta(i,j)+zeta(k,l)", or "H3" / "H(3)".
Functional<Rational> parse_functional(const std::string& s) {
  if (s.size() > 1 && (s[0] == 'H' || s[0] == 'h')) {
    std::string num = s.substr(1);
    if (!num.empty() && num.front() == '(') num = num.substr(1, num.size() - 2);
    return TraceHam{std::stoi(num)};
  }
  ElemSum<Rational> sum;
  size_t pos = 0;
  while (pos < s.size()) {
    Rational coeff(1);
    if (s[pos] == '+') ++pos;
    if (s[pos] == '-') {
      coeff = Rational(-1);
      ++pos;
    }
    size_t z = s.find("zeta(", pos);
    if (z == std::string::npos) throw std::invalid_argument("cannot parse functional: " + s);
    if (z > pos) {
      std::string c = s.substr(pos, z - pos);
      if (!c.empty() && c.back() == '*') c.pop_back();
      if (!c.empty()) coeff = coeff * Rational::from_string(c);
    }
    size_t close = s.find(')', z);
    if (close == std::string::npos) throw std::invalid_argument("cannot parse functional: " + s);
    std::string args = s.substr(z + 5, close - z - 5);
    size_t comma = args.find(',');
    int i = std::stoi(args.substr(0, comma));
    int j = std::stoi(args.substr(comma + 1));
    sum.terms.push_back({coeff, i, j});
    pos = close + 1;
  }
  return sum;
}

BracketSpec<Rational> parse_spec(const std::string& s) {
  // short mode codes are accepted as aliases for compatibility
  if (s == "quadratic" || s == "f134") return BracketSpec<Rational>::quad();
  if (s == "quadratic-alt" || s == "f134p1") return BracketSpec<Rational>::quad_p1();
  if (s == "coordinate" || s == "coord" || s == "f192") return BracketSpec<Rational>::coord();
  if (s == "linear") return BracketSpec<Rational>::linear();
  if (s.rfind("pencil:", 0) == 0)
    return BracketSpec<Rational>::pencil(Rational::from_string(s.substr(7)));
  throw CLI::ValidationError("--spec", "unknown bracket spec: " + s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-deformed Gelfand-Dickey structures: verification and calculators"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all", qstr = "1/2", nstr = "2,3", report_path;
  suites::Config cfg;
  verify->add_option("--suite", suite, "one of: algebra roots hierarchy bracket jacobi dsred cdeg all");
  verify->add_option("--q", qstr, "deformation parameter, rational in (0,1)");
  verify->add_option("--n", nstr, "comma-separated operator orders");
  verify->add_option("--depth", cfg.depth, "expansion depth K");
  verify->add_option("--digits", cfg.digits, "numeric precision in decimal digits");
  verify->add_option("--seed", cfg.seed, "seed for derived random instances");
  verify->add_option("--jobs", cfg.jobs, "parallel check workers (0 = hardware)");
  verify->add_option("--report", report_path, "write the JSON report here");

  // root
  auto* root = app.add_subcommand("root", "n-th root of a monic q-difference operator");
  std::string root_input;
  int root_n = 2, root_depth = 8;
  root->add_option("--input", root_input, "operator file (JSON)")->required();
  root->add_option("--n", root_n, "root order");
  root->add_option("--depth", root_depth, "retained coefficients");

  // flow
  auto* flow = app.add_subcommand("flow", "Lax flow right-hand side");
  std::string flow_input;
  int flow_m = 1, flow_n = 0, flow_depth = 8;
  flow->add_option("--op", flow_input, "operator file (JSON)")->required();
  flow->add_option("--m", flow_m, "flow index");
  flow->add_option("--n", flow_n, "operator order (default: top degree)");
  flow->add_option("--depth", flow_depth, "expansion depth");

  // bracket
  auto* br = app.add_subcommand("bracket", "Poisson bracket of two functionals");
  std::string br_spec = "quadratic", br_phi, br_psi, br_input;
  int br_n = 0, br_depth = 8;
  br->add_option("--spec", br_spec,
                 "quadratic | quadratic-alt | coordinate | linear | pencil:alpha "
                 "(aliases: f134, f134p1, f192)");
  br->add_option("--phi", br_phi, "first functional, e.g. zeta(1,0) or H3")->required();
  br->add_option("--psi", br_psi, "second functional")->required();
  br->add_option("--op", br_input, "operator file (JSON)")->required();
  br->add_option("--n", br_n, "operator order (default: top degree)");
  br->add_option("--depth", br_depth, "expansion depth");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      cfg.q = Rational::from_string(qstr);
      if (!(Rational(0) < cfg.q) || !(cfg.q < Rational(1)))
        throw CLI::ValidationError("--q", "q must be a rational in (0,1)");
      cfg.ns = parse_ns(nstr);
      BigFloat::set_base_decimal_digits(cfg.digits);
      auto rep = suites::run_suite(suite, cfg);
      for (auto& e : rep.entries)
        std::printf("%s  %s/%s  residual=%s%s\n", e.outcome.pass ? "pass" : "FAIL",
                    e.suite.c_str(), e.name.c_str(), e.outcome.residual.c_str(),
                    e.outcome.witness.empty() ? "" : ("  [" + e.outcome.witness + "]").c_str());
      std::printf("%s: %zu checks, %s\n", rep.suite.c_str(), rep.entries.size(),
                  rep.all_pass() ? "all pass" : "FAILURES PRESENT");
      if (!report_path.empty()) {
        std::ofstream out(report_path);
        out << rep.to_json().dump(2) << "\n";
      }
      return rep.all_pass() ? 0 : 1;
    }

    if (*root) {
      json j = read_json_file(root_input);
      Context<Rational> ctx;
      ctx.q = q_from_json<Rational>(j);
      ctx.depth = root_depth;
      auto L = MonicQDiff<Rational>::from_op(qop_from_json<Rational>(j), root_n);
      QOp<Rational> P = nth_root(L, ctx, root_depth);
      std::cout << qop_to_json(P, ctx).dump(2) << "\n";
      return 0;
    }

    if (*flow) {
      json j = read_json_file(flow_input);
      Context<Rational> ctx;
      ctx.q = q_from_json<Rational>(j);
      ctx.depth = flow_depth;
      QOp<Rational> op = qop_from_json<Rational>(j);
      int n = flow_n > 0 ? flow_n : op.hi();
      auto L = MonicQDiff<Rational>::from_op(op, n);
      QOp<Rational> V = lax_rhs(L, flow_m, ctx, flow_depth);
      std::cout << qop_to_json(V, ctx).dump(2) << "\n";
      return 0;
    }

    if (*br) {
      json j = read_json_file(br_input);
      Context<Rational> ctx;
      ctx.q = q_from_json<Rational>(j);
      ctx.depth = br_depth;
      QOp<Rational> op = qop_from_json<Rational>(j);
      int n = br_n > 0 ? br_n : op.hi();
      auto L = MonicQDiff<Rational>::from_op(op, n);
      auto spec = parse_spec(br_spec);
      Rational v = bracket(spec, parse_functional(br_phi), parse_functional(br_psi), L, ctx);
      std::cout << v.str() << "\n";
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
