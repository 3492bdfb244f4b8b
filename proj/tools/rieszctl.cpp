// rieszctl: command-line front end for the riesz library.
//
// Exit codes: 0 success, 1 usage or input error, 2 certified violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "riesz/errors.hpp"
#include "riesz/falgebra.hpp"
#include "riesz/gelfand.hpp"
#include "riesz/instances.hpp"
#include "riesz/json_io.hpp"
#include "riesz/lattice.hpp"
#include "riesz/selftest.hpp"
#include "riesz/spectrum.hpp"
#include "riesz/version.hpp"

using namespace riesz;
using nlohmann::json;

namespace {

struct Config {
  std::string command;
  std::string input;
  std::string input2;
  std::string tol_text = "1/1024";
  std::string eps_text = "1/16";
  std::uint64_t seed = 0;
  std::string format = "json";
  std::size_t max_iter = 4096;
  std::string level = "quick";

  Rational tol;
  Rational eps;
  /// Tolerance of matrix lattice operations feeding spectrum queries.
  Rational lattice_tol() const { return rmin(tol, pow2(-24)); }

  json to_json() const {
    return {{"command", command}, {"input", input},   {"input2", input2},     {"tol", tol_text},
            {"eps", eps_text},    {"seed", seed},     {"format", format},     {"maxIter", max_iter},
            {"level", level}};
  }
};

struct Outcome {
  json body;
  int code = 0;
  /// Replaces the JSON report when set (CSV output).
  std::optional<std::string> text = std::nullopt;
};

json read_json(const std::string& path) {
  if (path.empty()) throw ParseError("missing --input");
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Rational positive_flag(const std::string& text, const char* name) {
  const Rational q = parse_rational(text);
  if (sgn(q) <= 0) throw ParseError(std::string("--") + name + " must be positive");
  return q;
}

/// A herm element file or a bare matrix file.
HermVal load_herm(const json& j) {
  if (j.is_object() && j.contains("space")) {
    const Element e = parse_element(j);
    if (e.space().name() != "herm") throw ParseError("expected a matrix element");
    return e.as<HermVal>();
  }
  return HermVal{matrix_from_json(j), Rational(0)};
}

json rational_array(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(rational_json(x));
  return out;
}

std::string flat_csv(const json& body) {
  std::ostringstream out;
  out << "key,value\n";
  for (const auto& [key, value] : body.items()) out << key << "," << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  return out.str();
}

Outcome cmd_sup(const Config& c) {
  const Element a = parse_element(read_json(c.input));
  return {{{"sup", rational_json(sup_approx_generic(a, c.eps))}}};
}

Outcome cmd_pos(const Config& c) {
  const Element a = parse_element(read_json(c.input));
  const PosOutcome out = pos_or_below(a, c.eps);
  if (out.is_pos())
    return {{{"outcome", "pos"}, {"witness", rational_json(out.witness)}, {"supUpper", rational_json(out.sup_upper)}}};
  return {{{"outcome", "below"}, {"bound", rational_json(out.bound)}, {"supUpper", rational_json(out.sup_upper)}}};
}

Outcome cmd_point(const Config& c) {
  const std::vector<Element> elems = parse_element_list(read_json(c.input), c.lattice_tol());
  const PosOutcome out = pos_or_below(elems.front(), c.eps);
  if (!out.is_pos()) return {{{"outcome", "below"}, {"bound", rational_json(out.bound)}}};
  Representation sigma = point_new(elems.front(), out);
  json evals = json::object();
  for (std::size_t k = 0; k < elems.size(); ++k)
    evals["elem" + std::to_string(k)] = rational_json(sigma.eval(elems[k], c.eps));
  return {{{"outcome", "pos"}, {"witness", rational_json(out.witness)}, {"evals", evals}, {"cache", sigma.cache_json()}}};
}

Outcome cmd_net(const Config& c) {
  const std::vector<Element> elems = parse_element_list(read_json(c.input), c.lattice_tol());
  SpectrumNet net = epsilon_net(elems, c.eps);
  if (c.format == "csv") return {{}, 0, net_csv(net)};
  return {net_json(net)};
}

Outcome cmd_norm(const Config& c) {
  const Element a = parse_element(read_json(c.input), c.lattice_tol());
  const StoneYosida sy = stone_yosida_check(a, c.eps);
  const Rational gap = rabs(Rational(sy.norm_value - sy.net_max));
  const bool ok = gap <= 3 * c.eps;
  return {{{"normVal", rational_json(sy.norm_value)},
           {"netMax", rational_json(sy.net_max)},
           {"points", sy.points},
           {"gap", rational_json(gap)},
           {"passed", ok}},
          ok ? 0 : 2};
}

const char* tri_text(Tri t) { return t == Tri::yes ? "yes" : t == Tri::no ? "no" : "unknown"; }

Outcome cmd_check_lattice(const Config& c) {
  const json j = read_json(c.input);
  if (j.is_object() && j.contains("target")) {
    json elems = json::array({j.at("target")});
    for (const auto& p : j.at("parts")) elems.push_back(p);
    const SpacePtr space = parse_element_list(json{{"elements", elems}}, c.lattice_tol()).front().space_ptr();
    const Tri verdict = CoverCertificate::from_json(j, space).verify();
    return {{{"certificate", tri_text(verdict)}, {"passed", verdict == Tri::yes}}, verdict == Tri::yes ? 0 : 2};
  }
  const std::vector<Element> elems = parse_element_list(j, c.lattice_tol());
  std::array<std::size_t, 5> failures{};
  std::size_t pairs = 0;
  for (const auto& a : elems)
    for (const auto& b : elems) {
      ++pairs;
      const auto rel = lattice_relations(a, b);
      for (std::size_t i = 0; i < rel.size(); ++i)
        if (rel[i] == Tri::no) ++failures[i];
    }
  json certs = json::array();
  for (const auto& a : elems) certs.push_back(cover_range(a).cert.to_json());
  json rel = json::object();
  bool ok = true;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    rel["relation" + std::to_string(i + 1)] = failures[i];
    ok = ok && failures[i] == 0;
  }
  return {{{"pairs", pairs}, {"failures", rel}, {"certificates", certs}, {"passed", ok}}, ok ? 0 : 2};
}

Outcome cmd_sqrt(const Config& c) {
  const HermVal a = load_herm(read_json(c.input));
  SqrtOptions opt;
  opt.max_iter = c.max_iter;
  const SqrtResult res = sqrt_psd(a, c.tol, opt);
  return {{{"S", matrix_entries_json(res.root.matrix)},
           {"errBound", rational_json(res.trace.error_bound)},
           {"iterations", res.trace.iterations},
           {"majorant", rational_array(res.trace.majorant)},
           {"scaleExponent", res.trace.scale_exponent},
           {"aPrioriCap", res.trace.a_priori_cap}}};
}

Outcome cmd_abs(const Config& c) {
  const HermVal a = load_herm(read_json(c.input));
  const HermVal out = abs_value(a, c.tol);
  return {{{"abs", matrix_entries_json(out.matrix)}, {"err", rational_json(out.err)}}};
}

Outcome cmd_join(const Config& c) {
  const json elems = json{{"elements", json::array({read_json(c.input), read_json(c.input2)})}};
  const std::vector<Element> xs = parse_element_list(elems, c.tol);
  return {{{"join", xs[0].join(xs[1]).to_json()}}};
}

Outcome cmd_sos(const Config& c) {
  HermVal a = load_herm(read_json(c.input));
  Rational scale(1);
  if (!psd_check((-a.matrix).shifted(Rational(1)))) {
    scale = Rational(1) / Rational(unit_bound(make_herm_space(CommutingAlgebra::create({a.matrix}))->make(a.matrix)));
    a = herm_scale(scale, a);
  }
  const SumOfSquares sos = sum_of_squares(a, c.tol, c.max_iter);
  json squares = json::array();
  for (const auto& s : sos.squares) squares.push_back(matrix_entries_json(s.matrix));
  return {{{"scale", rational_json(scale)},
           {"squares", squares},
           {"residual", matrix_entries_json(sos.residual.matrix)},
           {"errBound", rational_json(sos.bound)},
           {"iterations", sos.squares.size()},
           {"reachedTol", sos.reached_tol}}};
}

Outcome cmd_gelfand(const Config& c) {
  const json j = read_json(c.input);
  if (!j.is_object() || !j.contains("generators") || !j.at("generators").is_array())
    throw ParseError("algebra file needs \"generators\"");
  std::vector<RationalMatrix> gens;
  for (const auto& g : j.at("generators")) gens.push_back(matrix_from_json(g));
  std::optional<std::size_t> dim;
  if (j.contains("dim")) dim = j.at("dim").get<std::size_t>();
  GelfandOptions opt;
  opt.seed = c.seed;
  const GelfandReport rep = gelfand_check(CommutingAlgebra::create(std::move(gens), dim), c.eps, opt);
  return {rep.to_json(), rep.passed() ? 0 : 2};
}

Outcome cmd_selftest(const Config& c) {
  SelftestOptions opt;
  opt.full = c.level == "full";
  opt.seed = c.seed == 0 ? 1 : c.seed;
  const char* mutation = std::getenv("RIESZ_SELFTEST_MUTATION");
  opt.mutate = mutation != nullptr && std::string(mutation) != "0" && std::string(mutation).size() > 0;
  const auto results = run_selftest(opt);
  json body = selftest_json(results);
  for (const auto& r : results)
    std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks, " << r.seconds << " s)"
              << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
  return {body, body.at("passed").get<bool>() ? 0 : 2};
}

Outcome dispatch(const Config& c) {
  if (c.command == "sup") return cmd_sup(c);
  if (c.command == "pos") return cmd_pos(c);
  if (c.command == "point") return cmd_point(c);
  if (c.command == "net") return cmd_net(c);
  if (c.command == "norm") return cmd_norm(c);
  if (c.command == "check-lattice") return cmd_check_lattice(c);
  if (c.command == "sqrt") return cmd_sqrt(c);
  if (c.command == "abs") return cmd_abs(c);
  if (c.command == "join") return cmd_join(c);
  if (c.command == "sos") return cmd_sos(c);
  if (c.command == "gelfand") return cmd_gelfand(c);
  return cmd_selftest(c);
}

}  // namespace

int main(int argc, char** argv) {
  Config config;
  CLI::App app{"Riesz spaces, spectra and f-algebras over exact rationals"};
  app.set_version_flag("--version", kVersion);
  app.add_option("command", config.command, "sup | pos | point | net | norm | check-lattice | sqrt | abs | join | sos | gelfand | selftest")
      ->required()
      ->check(CLI::IsMember({"sup", "pos", "point", "net", "norm", "check-lattice", "sqrt", "abs", "join", "sos",
                             "gelfand", "selftest"}));
  app.add_option("--input", config.input, "Element, element list, matrix, certificate or algebra file");
  app.add_option("--input2", config.input2, "Second element file (join)");
  app.add_option("--tol", config.tol_text, "Tolerance as an exact rational")->capture_default_str();
  app.add_option("--eps", config.eps_text, "Precision as an exact rational")->capture_default_str();
  app.add_option("--seed", config.seed, "Random seed")->capture_default_str();
  app.add_option("--format", config.format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--max-iter", config.max_iter, "Iteration cap")->capture_default_str();
  app.add_option("--level", config.level, "selftest level: quick | full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    config.tol = positive_flag(config.tol_text, "tol");
    config.eps = positive_flag(config.eps_text, "eps");
    Outcome out = dispatch(config);
    if (out.text) {
      std::cout << *out.text;
    } else if (config.format == "csv") {
      std::cout << flat_csv(out.body);
    } else {
      json report = out.body;
      report["version"] = kVersion;
      report["config"] = config.to_json();
      std::cout << report.dump(2) << "\n";
    }
    return out.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
