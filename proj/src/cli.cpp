#include "gammac/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>

#include "gammac/acceptance.hpp"
#include "gammac/analytic.hpp"
#include "gammac/carlitz.hpp"
#include "gammac/errors.hpp"
#include "gammac/fq_oracle.hpp"
#include "gammac/parse.hpp"
#include "gammac/torsion.hpp"

namespace gammac::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct TowerOptions {
  std::vector<std::string> generators;  // name[:omega[:lambda]]
  std::string scalar_field;             // minimal polynomial in scalar_name
  std::string scalar_name = "alpha";
  std::vector<double> scalar_root;      // embedding hint: re im

  json describe() const {
    json j;
    j["generators"] = generators;
    if (!scalar_field.empty()) {
      j["scalar_field"] = scalar_field;
      j["scalar_name"] = scalar_name;
    }
    return j;
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

mpq_class parse_rational(const std::string& text, const std::string& what) {
  mpq_class q;
  if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0)
    throw UsageError(what + ": expected a rational p/q, got '" + text + "'");
  q.canonicalize();
  return q;
}

TowerHandle build_tower(const TowerOptions& o) {
  TowerSpec spec;
  if (!o.scalar_field.empty()) {
    std::optional<std::complex<double>> hint;
    if (!o.scalar_root.empty()) {
      if (o.scalar_root.size() != 2) throw UsageError("--scalar-root takes two numbers: re im");
      hint = std::complex<double>(o.scalar_root[0], o.scalar_root[1]);
    }
    spec.scalar = std::make_shared<const ScalarField>(parse_rational_poly(o.scalar_field, o.scalar_name),
                                                      o.scalar_name, hint);
  }
  for (const auto& g : o.generators) {
    const auto parts = split(g, ':');
    if (parts.empty() || parts.size() > 3 || parts[0].empty())
      throw UsageError("--gen expects name[:omega[:lambda]], got '" + g + "'");
    Scalar omega(1);
    if (parts.size() >= 2) {
      const auto p = parse_rational_poly(parts[1], o.scalar_name);
      if (p.degree() > 0) {
        if (!spec.scalar) throw UsageError("--gen " + g + ": omega uses " + o.scalar_name + " but no --scalar-field");
        omega = Scalar(spec.scalar, p);
      } else {
        omega = Scalar(p.coeff(0));
      }
    }
    const mpq_class lambda = parts.size() == 3 ? parse_rational(parts[2], "--gen " + g) : mpq_class(1);
    spec.generators.push_back({parts[0], omega, lambda});
  }
  return make_tower(std::move(spec));
}

double default_tolerance() {
  if (const char* env = std::getenv("GAMMA_CARLITZ_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) throw UsageError(std::string("GAMMA_CARLITZ_TOL is not a positive number: ") + env);
    return v;
  }
  return SampleSpec{}.tol;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const Tower& tw, const TowerMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(tw.format(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json residual_json(const ResidualReport& rep) {
  json pts = json::array();
  for (const auto& p : rep.points) {
    json e;
    e["nu"] = complex_json(p.nu);
    if (p.pole)
      e["pole"] = true;
    else
      e["residual"] = p.residual;
    pts.push_back(e);
  }
  return {{"max_residual", rep.max_residual}, {"tol", rep.tol}, {"pass", rep.pass}, {"points", pts}};
}

struct Outcome {
  json result;
  std::optional<bool> verdict;
};

json envelope(const std::string& command, json inputs, json result, std::optional<bool> verdict) {
  json j;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["result"] = std::move(result);
  j["verdict"] = verdict ? json(*verdict ? "pass" : "fail") : json(nullptr);
  return j;
}

// Solutions attached to a factored polynomial: the whole basis, or entry r.
std::vector<std::pair<int, SolutionHandle>> select_basis(const FactoredPoly& f, std::optional<int> r) {
  const auto basis = solution_basis(f);
  std::vector<std::pair<int, SolutionHandle>> out;
  if (r) {
    if (*r < 0 || *r >= static_cast<int>(basis.size()))
      throw UsageError("--r must lie in [0, " + std::to_string(basis.size()) + ")");
    out.emplace_back(*r, basis[static_cast<std::size_t>(*r)]);
  } else {
    for (std::size_t i = 0; i < basis.size(); ++i) out.emplace_back(static_cast<int>(i), basis[i]);
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numeric tools for the characteristic-zero Carlitz module", "gammac"};
  app.require_subcommand(1);
  app.fallthrough();

  bool pretty = false;
  TowerOptions tower_opts;
  SampleSpec samples;
  std::optional<double> tol;
  app.add_flag("--pretty", pretty, "Indented JSON");
  app.add_option("--gen", tower_opts.generators, "Periodic generator name[:omega[:lambda]] (default omega = lambda = 1)");
  app.add_option("--scalar-field", tower_opts.scalar_field, "Minimal polynomial of the scalar generator");
  app.add_option("--scalar-name", tower_opts.scalar_name, "Name of the scalar generator")->capture_default_str();
  app.add_option("--scalar-root", tower_opts.scalar_root, "Approximate complex embedding: re im")->expected(2);
  app.add_option("--line-im", samples.line_im, "Imaginary part of the sampling line")->capture_default_str();
  app.add_option("--re-min", samples.re_min, "Smallest real part sampled")->capture_default_str();
  app.add_option("--re-max", samples.re_max, "Largest real part sampled")->capture_default_str();
  app.add_option("--points", samples.points, "Number of sample points")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "Residual tolerance (default GAMMA_CARLITZ_TOL or 1e-8)")->check(CLI::PositiveNumber);

  std::string command;
  json inputs = json::object();
  std::function<Outcome(const TowerHandle&)> action;
  auto tower = [&] { return build_tower(tower_opts); };

  std::string a_text, b_text, mod_text, p_text, side = "right";
  std::optional<int> r_index;

  auto* expand_cmd = app.add_subcommand("expand", "C_a as a skew operator");
  expand_cmd->add_option("--a", a_text, "Polynomial in t")->required();
  expand_cmd->callback([&] {
    command = "expand";
    inputs["a"] = a_text;
    action = [&](const TowerHandle& tw) {
      const auto a = parse_carlitz(tw, a_text);
      return Outcome{{{"value", expand(a).to_string()}, {"gamma", tw->format(gamma_map(a))}}, std::nullopt};
    };
  });

  auto* hat_cmd = app.add_subcommand("hat", "Orbit reduction of a factored polynomial");
  hat_cmd->add_option("--a", a_text, "Factored polynomial, e.g. (t)^1*(t+1)^1")->required();
  hat_cmd->callback([&] {
    command = "hat";
    inputs["a"] = a_text;
    action = [&](const TowerHandle& tw) {
      const auto h = hat_reduce(parse_factored(tw, a_text));
      return Outcome{{{"value", h.product().to_string()}, {"factored", h.to_string()}}, std::nullopt};
    };
  });

  auto* companion_cmd = app.add_subcommand("companion", "Companion system of C_a");
  companion_cmd->add_option("--a", a_text, "Polynomial in t")->required();
  companion_cmd->callback([&] {
    command = "companion";
    inputs["a"] = a_text;
    action = [&](const TowerHandle& tw) {
      const auto s = companion(parse_carlitz(tw, a_text));
      return Outcome{{{"matrix", matrix_json(*tw, s.matrix)},
                      {"twist_sign", s.twist_sign},
                      {"twist_ratio", tw->format(s.twist_ratio)}},
                     std::nullopt};
    };
  });

  auto* divmod_cmd = app.add_subcommand("divmod", "Euclidean division of skew operators");
  divmod_cmd->add_option("--a", a_text, "Dividend operator")->required();
  divmod_cmd->add_option("--b", b_text, "Divisor operator")->required();
  divmod_cmd->add_option("--side", side, "right: a = q b + r; left: a = b q + r")
      ->check(CLI::IsMember({"right", "left"}))
      ->capture_default_str();
  divmod_cmd->callback([&] {
    command = "divmod";
    inputs["a"] = a_text;
    inputs["b"] = b_text;
    inputs["side"] = side;
    action = [&](const TowerHandle& tw) {
      const auto a = parse_operator(tw, a_text), b = parse_operator(tw, b_text);
      const auto d = side == "right" ? right_divmod(a, b) : left_divmod(a, b);
      return Outcome{{{"quotient", d.quotient.to_string()}, {"remainder", d.remainder.to_string()}}, std::nullopt};
    };
  });

  std::vector<std::string> xs_text;
  std::string basis_text;
  double min_det = 1e-6;
  auto* cas_cmd = app.add_subcommand("casoratian", "Exact Casoratian of elements, or numeric Casoratian of a solution basis");
  auto* x_opt = cas_cmd->add_option("--x", xs_text, "Tower element (repeat for each column)");
  auto* basis_opt = cas_cmd->add_option("--basis", basis_text, "Factored polynomial whose solution basis is tested");
  x_opt->excludes(basis_opt);
  cas_cmd->add_option("--min-det", min_det, "Smallest acceptable |det| on the sampling line")->capture_default_str();
  cas_cmd->callback([&] {
    command = "casoratian";
    if (xs_text.empty() && basis_text.empty()) throw CLI::RequiredError("--x or --basis");
    action = [&](const TowerHandle& tw) -> Outcome {
      if (!xs_text.empty()) {
        inputs["x"] = xs_text;
        std::vector<TowerElement> xs;
        for (const auto& x : xs_text) xs.push_back(parse_element(tw, x));
        const auto rep = casoratian(tw, xs);
        return {{{"matrix", matrix_json(*tw, rep.matrix)},
                 {"determinant", tw->format(rep.determinant)},
                 {"full_rank", rep.full_rank}},
                std::nullopt};
      }
      inputs["basis"] = basis_text;
      inputs["min_det"] = min_det;
      inputs["tol"] = samples.tol;
      const auto f = parse_factored(tw, basis_text);
      const auto basis = solution_basis(f);
      const auto l = expand(f.product());
      json pts = json::array();
      bool pass = true;
      double smallest = 0.0, worst_twist = 0.0;
      bool first = true;
      for (const auto& nu : samples.nodes()) {
        json e;
        e["nu"] = complex_json(nu);
        try {
          const auto c = casoratian_numeric(basis, nu, &l);
          e["det"] = complex_json(c.det);
          e["twist_residual"] = *c.twist_residual;
          smallest = first ? std::abs(c.det) : std::min(smallest, std::abs(c.det));
          worst_twist = std::max(worst_twist, *c.twist_residual);
          first = false;
          pass = pass && std::abs(c.det) >= min_det && *c.twist_residual <= samples.tol;
        } catch (const PoleError&) {
          e["pole"] = true;
        }
        pts.push_back(e);
      }
      if (first) throw PoleError("every sample point is a pole");
      return {{{"size", basis.size()}, {"min_abs_det", smallest}, {"max_twist_residual", worst_twist}, {"points", pts}},
              pass};
    };
  });

  auto* inv_cmd = app.add_subcommand("torsion-inverse", "Inverse of b in A/(m)");
  inv_cmd->add_option("--b", b_text, "Residue representative")->required();
  inv_cmd->add_option("--mod", mod_text, "Monic modulus")->required();
  inv_cmd->callback([&] {
    command = "torsion-inverse";
    inputs["b"] = b_text;
    inputs["mod"] = mod_text;
    action = [&](const TowerHandle& tw) {
      const auto x = normalize(parse_carlitz(tw, b_text), parse_carlitz(tw, mod_text));
      const auto inv = inverse(x);
      return Outcome{{{"residue", x.value().to_string()},
                      {"is_generator", is_generator(x)},
                      {"inverse", inv ? json(inv->value().to_string()) : json(nullptr)}},
                     std::nullopt};
    };
  });

  auto* gal_cmd = app.add_subcommand("galois-matrix", "Matrix of multiplication by a unit b on A/(m)");
  gal_cmd->add_option("--b", b_text, "Unit representative")->required();
  gal_cmd->add_option("--mod", mod_text, "Monic modulus")->required();
  gal_cmd->callback([&] {
    command = "galois-matrix";
    inputs["b"] = b_text;
    inputs["mod"] = mod_text;
    action = [&](const TowerHandle& tw) {
      const auto x = normalize(parse_carlitz(tw, b_text), parse_carlitz(tw, mod_text));
      return Outcome{{{"residue", x.value().to_string()}, {"matrix", matrix_json(*tw, galois_matrix(x))}},
                     std::nullopt};
    };
  });

  auto* crt_cmd = app.add_subcommand("crt", "Chinese-remainder split of b modulo a factored modulus");
  crt_cmd->add_option("--mod", mod_text, "Factored modulus with pairwise coprime factors")->required();
  crt_cmd->add_option("--b", b_text, "Residue representative")->required();
  crt_cmd->callback([&] {
    command = "crt";
    inputs["mod"] = mod_text;
    inputs["b"] = b_text;
    action = [&](const TowerHandle& tw) {
      const CrtSplit s(parse_factored(tw, mod_text));
      const auto x = normalize(parse_carlitz(tw, b_text), s.modulus());
      const auto parts = s.split(x);
      json comps = json::array();
      for (std::size_t i = 0; i < parts.size(); ++i)
        comps.push_back({{"modulus", s.component_moduli()[i].to_string()},
                         {"residue", parts[i].value().to_string()},
                         {"idempotent", s.idempotents()[i].to_string()}});
      const auto back = s.recombine(parts);
      return Outcome{{{"modulus", s.modulus().to_string()},
                      {"residue", x.value().to_string()},
                      {"components", comps},
                      {"recombined", back.value().to_string()}},
                     back == x};
    };
  });

  auto* sol_cmd = app.add_subcommand("verify-solution", "Residual of C_p on the gamma-based solutions");
  sol_cmd->add_option("--p", p_text, "Polynomial or factored polynomial in t")->required();
  sol_cmd->add_option("--r", r_index, "Basis index (default: all)");
  sol_cmd->callback([&] {
    command = "verify-solution";
    inputs["p"] = p_text;
    if (r_index) inputs["r"] = *r_index;
    action = [&](const TowerHandle& tw) {
      inputs["samples"] = {{"line_im", samples.line_im}, {"re_min", samples.re_min}, {"re_max", samples.re_max},
                           {"points", samples.points}, {"tol", samples.tol}};
      const auto f = parse_factored(tw, p_text);
      const auto l = expand(f.product());
      json reports = json::array();
      bool pass = true;
      for (const auto& [r, h] : select_basis(f, r_index)) {
        const auto rep = residual_scan(l, h, samples);
        auto j = residual_json(rep);
        j["r"] = r;
        reports.push_back(j);
        pass = pass && rep.pass;
      }
      return Outcome{{{"operator", l.to_string()}, {"solutions", reports}}, pass};
    };
  });

  int order = 1;
  double control = 1e-2;
  auto* der_cmd = app.add_subcommand("verify-derivative", "D^j y is killed by C_{p^(j+1)} but not by C_{p^j}");
  der_cmd->add_option("--p", p_text, "Polynomial or factored polynomial in t")->required();
  der_cmd->add_option("--r", r_index, "Basis index (default: all)");
  der_cmd->add_option("--order", order, "Derivative order j")->capture_default_str()->check(CLI::Range(1, 4));
  der_cmd->add_option("--control", control, "Smallest residual expected under C_{p^j}")->capture_default_str();
  der_cmd->callback([&] {
    command = "verify-derivative";
    inputs["p"] = p_text;
    if (r_index) inputs["r"] = *r_index;
    inputs["order"] = order;
    inputs["control"] = control;
    action = [&](const TowerHandle& tw) {
      inputs["samples"] = {{"line_im", samples.line_im}, {"re_min", samples.re_min}, {"re_max", samples.re_max},
                           {"points", samples.points}, {"tol", samples.tol}};
      const auto f = parse_factored(tw, p_text);
      const auto p = f.product();
      const auto killer = expand(pow(p, static_cast<unsigned>(order + 1)));
      const auto weaker = expand(pow(p, static_cast<unsigned>(order)));
      json reports = json::array();
      bool pass = true;
      for (const auto& [r, h] : select_basis(f, r_index)) {
        const auto dy = derive_solution(h, order);
        const auto good = residual_scan(killer, dy, samples);
        const auto bad = residual_scan(weaker, dy, samples);
        const bool ok = good.pass && bad.max_residual >= control;
        reports.push_back({{"r", r},
                           {"residual", good.max_residual},
                           {"control_residual", bad.max_residual},
                           {"pass", ok},
                           {"points", residual_json(good)["points"]}});
        pass = pass && ok;
      }
      return Outcome{{{"solutions", reports}}, pass};
    };
  });

  double re = 0.0, im = 0.0;
  std::optional<long> euler_n;
  auto* gamma_cmd = app.add_subcommand("gamma", "Gamma and digamma at a complex point");
  gamma_cmd->add_option("--re", re, "Real part")->required();
  gamma_cmd->add_option("--im", im, "Imaginary part")->capture_default_str();
  gamma_cmd->add_option("--euler", euler_n, "Also the Euler product truncated at N factors")->check(CLI::PositiveNumber);
  gamma_cmd->callback([&] {
    command = "gamma";
    inputs["z"] = json::array({re, im});
    if (euler_n) inputs["euler"] = *euler_n;
    action = [&](const TowerHandle&) {
      const Complex z(re, im);
      json res{{"gamma", complex_json(gamma_fn(z))}, {"digamma", complex_json(digamma_fn(z))}};
      if (euler_n) res["euler_product"] = complex_json(euler_product_partial(z, *euler_n));
      return Outcome{res, std::nullopt};
    };
  });

  int q = 2, cap = 12;
  std::string fq_modulus = "x", fq_theta;
  auto* fq_cmd = app.add_subcommand("fq-torsion", "Structure of the a-torsion of the Carlitz module over a finite field");
  fq_cmd->add_option("--q", q, "Prime characteristic")->required();
  fq_cmd->add_option("--modulus", fq_modulus, "Monic irreducible in x defining F_q[x]/(f)")->capture_default_str();
  fq_cmd->add_option("--theta", fq_theta, "Reduction of theta, a polynomial in x")->required();
  fq_cmd->add_option("--a", a_text, "Polynomial in t over F_q")->required();
  fq_cmd->add_option("--cap", cap, "Largest extension degree tried")->capture_default_str()->check(CLI::Range(1, 24));
  fq_cmd->callback([&] {
    command = "fq-torsion";
    inputs["q"] = q;
    inputs["modulus"] = fq_modulus;
    inputs["theta"] = fq_theta;
    inputs["a"] = a_text;
    inputs["cap"] = cap;
    action = [&](const TowerHandle&) {
      using namespace gammac::fq;
      if (!is_prime(q)) throw InvalidArgument("--q must be prime");
      const FqContext base(q, FqPoly::parse(fq_modulus, q, "x"), FqPoly::parse(fq_theta, q, "x"));
      const auto a = FqPoly::parse(a_text, q);
      json res{{"degree", a.degree()}, {"theta_minpoly", base.theta_minpoly().to_string()}, {"start_m", base.m()}};
      const auto ctx = fq_saturate(a, base, cap);
      if (!ctx) {
        res["full_torsion"] = false;
        res["kernel_dim"] = static_cast<int>(fq_kernel(a, base).size());
        res["m"] = base.m();
        return Outcome{res, false};
      }
      const auto s = fq_structure(a, *ctx);
      res["full_torsion"] = true;
      res["m"] = ctx->m();
      res["field_modulus"] = ctx->modulus().to_string("x");
      res["theta"] = ctx->theta().to_string("x");
      res["kernel_dim"] = s.kernel_dim;
      res["cyclic"] = s.cyclic;
      res["generators"] = s.generators;
      res["units"] = s.units;
      res["witness"] = s.witness ? json(s.witness->to_string("x")) : json(nullptr);
      return Outcome{res, s.cyclic && s.generators == s.units};
    };
  });

  std::optional<int> only;
  auto* acc_cmd = app.add_subcommand("acceptance", "Runs the acceptance suite");
  acc_cmd->add_option("--only", only, "Single criterion id")->check(CLI::Range(1, acceptance_criterion_count()));
  acc_cmd->callback([&] {
    command = "acceptance";
    if (only) inputs["only"] = *only;
    action = [&](const TowerHandle&) {
      std::vector<CriterionResult> rs;
      if (only)
        rs.push_back(run_acceptance_criterion(*only));
      else
        rs = run_acceptance();
      json list = json::array();
      bool pass = true;
      for (const auto& r : rs) {
        list.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
        pass = pass && r.pass;
      }
      return Outcome{{{"criteria", list}}, pass};
    };
  });

  auto emit = [&](const json& j) { out << j.dump(pretty ? 2 : -1) << '\n'; };
  auto fail = [&](const std::string& message, std::optional<std::size_t> offset) {
    json e{{"message", message}};
    if (offset) e["offset"] = *offset;
    json doc = envelope(command, inputs, nullptr, std::nullopt);
    if (command.empty()) doc["command"] = nullptr;
    doc["error"] = e;
    emit(doc);
    err << "error: " << message << '\n';
    return 2;
  };

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail(e.what(), std::nullopt);
  } catch (const ParseError& e) {
    return fail(e.what(), e.offset());
  } catch (const Error& e) {
    return fail(e.what(), std::nullopt);
  }

  try {
    if (!tol) tol = default_tolerance();
    samples.tol = *tol;
    if (!tower_opts.generators.empty() || !tower_opts.scalar_field.empty()) inputs["tower"] = tower_opts.describe();
    const auto outcome = action(tower());
    emit(envelope(command, inputs, outcome.result, outcome.verdict));
    return outcome.verdict.value_or(true) ? 0 : 1;
  } catch (const ParseError& e) {
    return fail(e.what(), e.offset());
  } catch (const std::exception& e) {
    return fail(e.what(), std::nullopt);
  }
}

}  // namespace gammac::cli
