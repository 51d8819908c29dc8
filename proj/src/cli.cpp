#include "engel/cli.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "engel/io.hpp"
#include "engel/suites.hpp"

namespace engel {

namespace {

/// A verification failure with a report to emit.
struct Outcome {
  Json result;
  int code = kExitOk;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

UPoly parse_coefficients(const std::string& text) {
  std::vector<GaussianRational> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) c.push_back(GaussianRational::parse(item));
  if (c.empty()) throw std::invalid_argument("empty coefficient list");
  return UPoly(std::move(c));
}

TangencyModel parse_model(const std::string& m) {
  if (m == "D") return TangencyModel::DStandard;
  if (m == "E") return TangencyModel::EStandard;
  if (m == "W") return TangencyModel::WStandard;
  throw std::invalid_argument("model must be D, E or W");
}

Json echo(const ExperimentConfig& c) {
  return {{"subcommand", c.subcommand}, {"inputs", c.inputs}, {"seed", c.seed}, {"samples", c.samples},
          {"degree", c.degree}, {"restarts", c.restarts}, {"out", c.out}, {"format", c.format}};
}

struct Options {
  ExperimentConfig cfg;
  bool standard = false;
  std::string frame, curve, model = "D", w, x, z, y0 = "0", z0 = "0", set, point, dir, obstacle = "B", from, to,
                                     shears, flag = "standard", chart = "0", r, rprime, epsilon = "1/2";
  int n = 3, iterations = 100, quadrature = 128;
  bool with_metadata = false;
};

Outcome cmd_flag(const Options& o) {
  DistributionFrame d = standard_engel_frame();
  if (!o.frame.empty()) {
    const Json j = read_json_file(o.frame);
    if (!j.is_array() || j.size() != 2) throw SchemaError("frame must be a list of two fields");
    d = DistributionFrame({field_from_json(j[0]), field_from_json(j[1])}, 2);
  } else if (!o.standard) {
    throw std::invalid_argument("flag needs --standard or --frame");
  }
  const EngelCheck check = check_engel(d);
  if (const auto* f = std::get_if<EngelFailure>(&check))
    return {{{"engel", false}, {"stage", f->stage}, {"detail", f->detail}}, kExitVerificationFailure};
  return {{{"engel", true}, {"flag", to_json(std::get<EngelFlag>(check))}}, kExitOk};
}

Outcome cmd_tangency(const Options& o) {
  const PolyCurve c = curve_from_json(read_json_file(o.curve));
  const TangencyReport r = verify_tangency(c, forms_for(parse_model(o.model)));
  return {{{"model", o.model}, {"report", to_json(r)}}, r.tangent ? kExitOk : kExitVerificationFailure};
}

Outcome cmd_integrate(const Options& o) {
  if (o.model != "D" && o.model != "E") throw std::invalid_argument("integrate supports models D and E");
  const UPoly w = parse_coefficients(o.w), x = parse_coefficients(o.x);
  const GaussianRational y0 = GaussianRational::parse(o.y0);
  HorizontalDisc d = o.model == "E" ? integrate_horizontal_E(w, x, parse_coefficients(o.z), y0)
                                    : integrate_horizontal_D(w, x, y0, GaussianRational::parse(o.z0));
  const TangencyReport r = verify_tangency(d.curve, forms_for(d.model));
  return {{{"disc", to_json(d)}, {"tangent", r.tangent}}, r.tangent ? kExitOk : kExitVerificationFailure};
}

ShellSet shell_from_options(const std::string& kind, const Options& o) {
  Json j = {{"kind", kind}, {"epsilon", o.epsilon}, {"n", o.n}};
  if (!o.r.empty()) j["R"] = o.r;
  return shellset_from_json(j);
}

Outcome cmd_member(const Options& o) {
  const ShellSet s = shell_from_options(o.set, o);
  const ExactPoint p = parse_point(o.point);
  if (static_cast<std::size_t>(p.size()) != s.dimension()) throw std::invalid_argument("point has the wrong dimension");
  const Membership m = shell_membership(s, p);
  const std::string verdict = m.in ? "In(layer " + std::to_string(m.layer) + ")" : "Out";
  return {{{"set", to_json(s)}, {"point", to_json(p)}, {"in", m.in}, {"layer", m.layer}, {"verdict", verdict}},
          kExitOk};
}

Outcome cmd_lemma(const Options& o) {
  const LemmaModel m = parse_lemma_model(o.model);
  if (o.cfg.samples < 1) throw std::invalid_argument("--samples must be positive");
  const LemmaSuiteResult s = run_lemma_suite(m, o.cfg.samples, o.cfg.seed, o.cfg.degree);
  Json verdicts = Json::array();
  for (const auto& sample : s.samples) {
    Json v = {{"index", sample.index}, {"regime", to_string(sample.regime)}, {"certified", sample.certified},
              {"injective", sample.injective}, {"attempts", sample.attempts}};
    if (sample.certified) v["verdict"] = to_json(sample.verdict);
    verdicts.push_back(v);
  }
  Json summary = {{"model", to_string(m)}, {"samples", s.samples.size()}, {"counterexamples", s.counterexamples},
                  {"uncertified", s.uncertified}, {"injective", s.injective},
                  {"injective_counterexamples", s.injective_counterexamples}};
  return {{{"verdicts", verdicts}, {"summary", summary}}, s.counterexamples > 0 ? kExitVerificationFailure : kExitOk};
}

Outcome cmd_finsler(const Options& o) {
  SearchConfig sc;
  sc.seed = o.cfg.seed;
  sc.restarts = o.cfg.restarts;
  sc.degree = o.cfg.degree;
  sc.iterations = o.iterations;
  sc.validate();
  const ShellSet s = shell_from_options(o.obstacle, o);
  const FinslerBound b = finsler_report(parse_point(o.point), parse_point(o.dir), s, sc);
  return {{{"obstacle", to_json(s)}, {"bound", to_json(b)}}, b.witness ? kExitOk : kExitBudgetExhausted};
}

Outcome cmd_steer(const Options& o) {
  const ExactPoint p = parse_point(o.from), q = parse_point(o.to);
  const HorizontalPath path = hermite_steer(p, q);
  const bool ok = path_endpoint_check(path, p, q) && path_tangent(path);
  return {{{"from", to_json(p)}, {"to", to_json(q)}, {"verified", ok}, {"path", to_json(path)}},
          ok ? kExitOk : kExitVerificationFailure};
}

Outcome cmd_pullback(const Options& o) {
  if (o.flag != "standard") throw std::invalid_argument("only --flag standard is supported");
  const std::vector<Shear> shears = shears_from_json(read_json_file(o.shears), standard_ambient());
  const PolyAutomorphism phi = compose_shears(standard_ambient(), shears);
  const EngelFlag st = std::get<EngelFlag>(check_engel(standard_engel_frame()));
  Json sj = Json::array();
  for (const auto& s : shears) sj.push_back(to_json(s));
  Json result = {{"shears", sj}, {"forward", to_json(phi.forward())}, {"inverse", to_json(phi.inverse())}};
  try {
    result["flag"] = to_json(pullback_flag(phi, st));
    result["engel"] = true;
    return {result, kExitOk};
  } catch (const std::runtime_error& e) {
    result["engel"] = false;
    result["detail"] = e.what();
    return {result, kExitVerificationFailure};
  }
}

Outcome cmd_prolong(const Options& o) {
  if (o.chart != "0" && o.chart != "inf") throw std::invalid_argument("--chart must be 0 or inf");
  const ProlongChart c = o.chart == "0" ? ProlongChart::Zero : ProlongChart::Infinity;
  const DistributionFrame p = cartan_prolong(standard_contact_frame(), standard_contact_form(), c);
  const EngelCheck check = check_engel(p);
  Json result = {{"chart", to_string(c)}, {"frame", to_json(p)}};
  if (const auto* f = std::get_if<EngelFailure>(&check)) {
    result["engel"] = false;
    result["stage"] = f->stage;
    return {result, kExitVerificationFailure};
  }
  const EngelFlag& flag = std::get<EngelFlag>(check);
  const std::vector<VectorField> pair_w = {flag.w, VectorField::coordinate(p.ambient(), fiber_name(c))};
  result["engel"] = true;
  result["flag"] = to_json(flag);
  result["characteristic_is_fiber"] = generic_rank(pair_w) == 1;
  return {result, generic_rank(pair_w) == 1 ? kExitOk : kExitVerificationFailure};
}

Outcome cmd_moduli(const Options& o) {
  const TripleSet s = TripleSet::standard(parse_rational(o.r)), t = TripleSet::standard(parse_rational(o.rprime));
  const auto w = affine_bijection_exists(s, t);
  Json result = {{"R", o.r}, {"Rprime", o.rprime}};
  result["witness"] = w ? to_json(*w) : Json("None");
  return {result, kExitOk};
}

Outcome cmd_reproduce(const Options& o, Json& metadata) {
  Json suites = Json::object();
  bool ok = true;
  for (const auto& info : acceptance_suites()) {
    const SuiteResult r = run_suite(info, o.cfg.seed);
    ok = ok && r.pass();
    suites[info.name] = r.report;
    metadata[info.name] = {{"seconds", r.seconds}, {"limit_seconds", info.limit_seconds}, {"in_time", r.in_time()}};
  }
  return {{{"pass", ok}, {"suites", suites}}, ok ? kExitOk : kExitVerificationFailure};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification toolkit for holomorphic Engel structures on C^4", "engel"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.cfg.seed, "master seed");
    sub->add_option("--out", o.cfg.out, "write the report to this path");
    sub->add_option("--format", o.cfg.format, "report format")->check(CLI::IsMember({"json"}));
  };
  CLI::App* flag = app.add_subcommand("flag", "derive the flag W < D < E of a rank-2 frame");
  flag->add_flag("--standard", o.standard, "standard structure");
  flag->add_option("--frame", o.frame, "JSON list of two fields")->check(CLI::ExistingFile);
  CLI::App* tangency = app.add_subcommand("tangency", "tangency residuals of a curve");
  tangency->add_option("--curve", o.curve, "curve JSON")->required()->check(CLI::ExistingFile);
  tangency->add_option("--model", o.model, "D, E or W");
  CLI::App* integrate = app.add_subcommand("integrate", "integrate a horizontal curve from w and x");
  integrate->add_option("--w", o.w, "coefficients of w, constant first")->required();
  integrate->add_option("--x", o.x, "coefficients of x, constant first")->required();
  integrate->add_option("--z", o.z, "coefficients of z (model E)");
  integrate->add_option("--y0", o.y0, "y(0)");
  integrate->add_option("--z0", o.z0, "z(0) (model D)");
  integrate->add_option("--model", o.model, "D or E");
  CLI::App* member = app.add_subcommand("member", "exact shell membership");
  member->add_option("--set", o.set, "Empty, A, B, K3, KW, Ln or CR")->required();
  member->add_option("--point", o.point, "comma separated coordinates")->required();
  CLI::App* lemma = app.add_subcommand("lemma-verify", "sampled derivative-estimate suite");
  lemma->add_option("--model", o.model, "A or B")->required();
  lemma->add_option("--samples", o.cfg.samples, "number of discs");
  lemma->add_option("--degree", o.cfg.degree, "degree of w and x");
  CLI::App* finsler = app.add_subcommand("finsler", "lower and upper Finsler bounds");
  finsler->add_option("--point", o.point, "base point")->required();
  finsler->add_option("--dir", o.dir, "direction in D_p")->required();
  finsler->add_option("--obstacle", o.obstacle, "A or B");
  finsler->add_option("--restarts", o.cfg.restarts, "search restarts");
  finsler->add_option("--degree", o.cfg.degree, "degree budget of w and x");
  finsler->add_option("--iterations", o.iterations, "simplex iterations per restart");
  CLI::App* steer = app.add_subcommand("steer", "horizontal path between two points");
  steer->add_option("--from", o.from, "start point")->required();
  steer->add_option("--to", o.to, "end point")->required();
  CLI::App* pullback = app.add_subcommand("pullback", "pull the flag back by a shear composition");
  pullback->add_option("--shears", o.shears, "JSON list of shears")->required()->check(CLI::ExistingFile);
  pullback->add_option("--flag", o.flag, "flag to pull back");
  CLI::App* prolong = app.add_subcommand("prolong", "Cartan prolongation of the standard contact structure");
  prolong->add_option("--chart", o.chart, "0 or inf");
  CLI::App* moduli = app.add_subcommand("moduli-check", "affine bijection {0,1,Ri} -> {0,1,R'i}");
  moduli->add_option("--R", o.r, "R")->required();
  moduli->add_option("--Rprime", o.rprime, "R'")->required();
  CLI::App* reproduce = app.add_subcommand("reproduce-all", "run every acceptance suite");
  reproduce->add_flag("--with-metadata", o.with_metadata, "add wall-clock timings under \"metadata\"");
  for (CLI::App* sub : {flag, tangency, integrate, member, lemma, finsler, steer, pullback, prolong, moduli, reproduce})
    common(sub);
  for (CLI::App* sub : {member, finsler}) {
    sub->add_option("--epsilon", o.epsilon, "K3 epsilon");
    sub->add_option("--n", o.n, "Ln slab count");
    sub->add_option("--R", o.r, "CR parameter");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInvalidInput;
  }
  o.cfg.subcommand = app.get_subcommands().front()->get_name();
  o.cfg.inputs = args;

  Outcome outcome;
  Json metadata = Json::object();
  try {
    const std::string& sub = o.cfg.subcommand;
    if (sub == "flag") outcome = cmd_flag(o);
    else if (sub == "tangency") outcome = cmd_tangency(o);
    else if (sub == "integrate") outcome = cmd_integrate(o);
    else if (sub == "member") outcome = cmd_member(o);
    else if (sub == "lemma-verify") outcome = cmd_lemma(o);
    else if (sub == "finsler") outcome = cmd_finsler(o);
    else if (sub == "steer") outcome = cmd_steer(o);
    else if (sub == "pullback") outcome = cmd_pullback(o);
    else if (sub == "prolong") outcome = cmd_prolong(o);
    else if (sub == "moduli-check") outcome = cmd_moduli(o);
    else outcome = cmd_reproduce(o, metadata);
  } catch (const std::invalid_argument& e) {
    // SchemaError, PreconditionError and malformed numbers.
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "verification failure: " << e.what() << "\n";
    return kExitVerificationFailure;
  }

  Json report = {{"tool", "engel"}, {"version", kVersion}, {"config", echo(o.cfg)}, {"result", outcome.result},
                 {"exit_code", outcome.code}};
  if (o.with_metadata) report["metadata"] = metadata;
  const std::string text = report.dump(2) + "\n";
  if (o.cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.cfg.out);
    if (!f) {
      err << "cannot write " << o.cfg.out << "\n";
      return kExitInvalidInput;
    }
    f << text;
  }
  return outcome.code;
}

}  // namespace engel
