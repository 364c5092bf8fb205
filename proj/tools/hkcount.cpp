// hkcount: point counts of bounded height on Hirzebruch-Kleinschmidt
// varieties and projective spaces, their predicted asymptotics, and the
// numerical self-checks.
//
// Exit codes: 0 success, 2 parse error, 3 bundle not big (infinite count),
// 4 verification failure, 1 any other error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "hk/arakelov.hpp"
#include "hk/constants.hpp"
#include "hk/enumerate.hpp"
#include "hk/errors.hpp"
#include "hk/literals.hpp"
#include "hk/report.hpp"
#include "hk/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOther = 1;
constexpr int kExitParse = 2;
constexpr int kExitNotBig = 3;
constexpr int kExitVerify = 4;

struct Options {
  std::string format = "text";
  int threads = 0;
  std::string field;  // empty: builtin Q
  std::string variety;
  std::optional<int> projective;
  long twist = 1;
  std::string bundle;
  std::string bound;
  std::string region = "u";
  std::string grid;
  bool stream = false;
  std::string table = "all";
  std::string function = "zetaP";
  std::string s;
  int m = 1;
  double tol = 1e-8;
  std::string method = "auto";
  std::string suite = "all";
};

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HKCOUNT_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

hk::FieldInvariants field_of(const Options& o) {
  return o.field.empty() ? hk::FieldInvariants::rationals() : hk::FieldInvariants::from_file(o.field);
}

hk::Region region_of(const std::string& s) {
  if (s == "u") return hk::Region::GoodOpen;
  if (s == "f") return hk::Region::SubbundleF;
  if (s == "x") return hk::Region::Whole;
  throw hk::ParseError("region must be u, f or x, got '" + s + "'");
}

hk::CountTarget target_of(const Options& o) {
  if (o.projective) {
    if (!o.variety.empty()) throw hk::ParseError("give either --variety or --projective, not both");
    if (*o.projective < 1) throw hk::ParseError("--projective needs n >= 1");
    return hk::ProjectiveTarget{*o.projective, o.twist};
  }
  if (o.variety.empty()) throw hk::ParseError("a target is required: --variety r,t:a1,... or --projective n");
  return hk::parse_variety(o.variety);
}

std::string target_literal(const hk::CountTarget& t) {
  if (const auto* p = std::get_if<hk::ProjectiveTarget>(&t))
    return "P^" + std::to_string(p->n) + (p->twist == 1 ? "" : " O(" + std::to_string(p->twist) + ")");
  return std::get<hk::HKVariety>(t).literal();
}

hk::LineBundleClass bundle_of(const Options& o, const hk::CountTarget& t) {
  if (std::holds_alternative<hk::ProjectiveTarget>(t)) return {};
  if (o.bundle.empty()) return hk::anticanonical(std::get<hk::HKVariety>(t));
  return hk::parse_bundle(o.bundle);
}

hk::AsymptoticPrediction prediction_for(const hk::CountTarget& t, const hk::LineBundleClass& l, hk::Region region,
                                        const hk::FieldInvariants& inv) {
  if (const auto* p = std::get_if<hk::ProjectiveTarget>(&t)) return hk::schanuel_twisted(p->n, p->twist, inv);
  return hk::predict_region(std::get<hk::HKVariety>(t), l, region, inv);
}

void print_kv(const std::string& key, const std::string& value) {
  std::cout << std::left << std::setw(14) << key << value << '\n';
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

int cmd_predict(const Options& o) {
  const auto target = target_of(o);
  const auto l = bundle_of(o, target);
  const auto region = std::holds_alternative<hk::ProjectiveTarget>(target) ? hk::Region::Whole : region_of(o.region);
  const auto inv = field_of(o);

  json chain = json::array();
  if (const auto* x = std::get_if<hk::HKVariety>(&target)) {
    for (const auto& s : hk::decompose(*x, l)) {
      json entry = {{"stratum", s.label()}, {"big", s.big}};
      if (s.kind == hk::Stratum::Kind::Projective)
        entry["twist"] = s.projective.twist;
      else
        entry["bundle"] = {s.bundle.lambda, s.bundle.mu};
      if (!s.big) entry["note"] = "not big: the count is infinite on that stratum";
      chain.push_back(entry);
    }
  }

  const hk::AsymptoticPrediction p = prediction_for(target, l, region, inv);
  if (o.format == "json") {
    json j = hk::to_json(p);
    j["target"] = target_literal(target);
    if (std::holds_alternative<hk::HKVariety>(target)) j["bundle"] = {l.lambda, l.mu};
    j["region"] = hk::to_string(region);
    j["chain"] = chain;
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  print_kv("target", target_literal(target));
  if (std::holds_alternative<hk::HKVariety>(target))
    print_kv("bundle", std::to_string(l.lambda) + "," + std::to_string(l.mu));
  print_kv("region", hk::to_string(region));
  print_kv("aL", p.a_l.get_str());
  print_kv("logExponent", std::to_string(p.log_exponent));
  print_kv("C", fmt(static_cast<double>(p.C)));
  print_kv("caseTag", p.case_tag);
  print_kv("source", p.source);
  if (!chain.empty()) {
    std::cout << "chain:\n";
    for (const auto& e : chain) {
      std::cout << "  " << std::left << std::setw(28) << e["stratum"].get<std::string>()
                << (e["big"].get<bool>() ? "big" : "not big: the count is infinite on that stratum") << '\n';
    }
  }
  return 0;
}

int cmd_count(const Options& o) {
  const auto target = target_of(o);
  hk::CountRequest req;
  req.target = target;
  req.bundle = bundle_of(o, target);
  if (o.bound.empty()) throw hk::ParseError("--B is required");
  req.bound = hk::parse_rational(o.bound);
  if (req.bound <= 0) throw hk::ParseError("--B must be positive");
  req.region = std::holds_alternative<hk::ProjectiveTarget>(target) ? hk::Region::Whole : region_of(o.region);
  req.threads = resolve_threads(o.threads);

  if (o.stream) {
    if (const auto* p = std::get_if<hk::ProjectiveTarget>(&target)) {
      if (p->twist != 1) throw hk::ParseError("--stream on projective space supports twist 1 only");
      hk::enum_projective(p->n, req.bound, [](const hk::ProjectivePoint& q) { std::cout << q.literal() << '\n'; });
    } else {
      hk::enumerate_hk(std::get<hk::HKVariety>(target), req.bundle, req.bound, req.region,
                       [](const hk::HKRationalPoint& q) { std::cout << q.literal() << '\n'; });
    }
  }

  const hk::CountResult r = hk::count_hk(req);
  json j = hk::to_json(r);
  j["target"] = target_literal(target);
  j["region"] = hk::to_string(req.region);
  j["B"] = hk::format_rational(req.bound);
  bool consistent = true;
  if (req.region == hk::Region::Whole && std::holds_alternative<hk::HKVariety>(target)) {
    hk::CountRequest part = req;
    part.region = hk::Region::GoodOpen;
    const mpz_class u = hk::count_hk(part).count;
    part.region = hk::Region::SubbundleF;
    const mpz_class f = hk::count_hk(part).count;
    consistent = u + f == r.count;
    j["partition"] = {{"u", u.get_str()}, {"f", f.get_str()}, {"consistent", consistent}};
  }
  if (o.format == "json") {
    std::cout << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    std::cout << "target,region,B,count,elapsed\n"
              << '"' << j["target"].get<std::string>() << "\"," << j["region"].get<std::string>() << ','
              << j["B"].get<std::string>() << ',' << r.count.get_str() << ',' << r.elapsed << '\n';
  } else {
    print_kv("count", r.count.get_str());
    print_kv("elapsed", fmt(r.elapsed) + " s");
    if (j.contains("partition")) {
      print_kv("N(U)", j["partition"]["u"].get<std::string>());
      print_kv("N(F)", j["partition"]["f"].get<std::string>());
      print_kv("U + F = X", consistent ? "yes" : "NO");
    }
  }
  return consistent ? 0 : kExitVerify;
}

int cmd_sweep(const Options& o) {
  const auto target = target_of(o);
  hk::CountRequest req;
  req.target = target;
  req.bundle = bundle_of(o, target);
  req.region = std::holds_alternative<hk::ProjectiveTarget>(target) ? hk::Region::Whole : region_of(o.region);
  req.threads = resolve_threads(o.threads);
  if (o.grid.empty()) throw hk::ParseError("--grid is required");
  const auto grid = hk::parse_grid(o.grid);

  std::optional<hk::AsymptoticPrediction> p;
  try {
    p = prediction_for(target, req.bundle, req.region, field_of(o));
  } catch (const hk::TooCloseToPole&) {
    // The counts are still exact; the predicted column stays zero.
  }
  std::function<double(const mpq_class&)> predicted;
  if (p) predicted = [&](const mpq_class& b) { return static_cast<double>(p->main_term(b.get_d())); };
  const auto rows = hk::sweep(req, grid, predicted);

  if (o.format == "json") {
    json j = {{"target", target_literal(target)}, {"region", hk::to_string(req.region)}, {"rows", json::array()}};
    if (p) j["prediction"] = hk::to_json(*p);
    for (const auto& r : rows) j["rows"].push_back(hk::to_json(r));
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << hk::sweep_csv(rows);
  }
  return 0;
}

int cmd_tables(const Options& o) {
  const auto inv = field_of(o);
  const bool hirz = o.table == "all" || o.table == "hirzebruch";
  const bool three = o.table == "all" || o.table == "threefold";
  if (!hirz && !three) throw hk::ParseError("--table must be hirzebruch, threefold or all");
  json j = json::object();
  if (hirz) {
    json rows = json::array();
    for (const auto& r : hk::hirzebruch_table(inv)) {
      json row = hk::to_json(r.prediction);
      row["lambda"] = r.lambda;
      row["mu"] = r.mu;
      rows.push_back(row);
    }
    j["hirzebruch"] = rows;
  }
  if (three) {
    json rows = json::array();
    for (const auto& r : hk::threefold_table(inv)) {
      json strata = json::array();
      for (const auto& s : r.strata) {
        json e = {{"name", s.name}, {"big", s.big}};
        if (s.prediction) e["prediction"] = hk::to_json(*s.prediction);
        strata.push_back(e);
      }
      rows.push_back({{"case", r.case_label},
                      {"a1", r.a1},
                      {"a2", r.a2},
                      {"LBig", r.l_big},
                      {"MBig", r.m_big},
                      {"dominant", r.dominant},
                      {"comparison", r.comparison},
                      {"strata", strata}});
    }
    j["threefold"] = rows;
  }
  if (o.format == "json") {
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  if (hirz) {
    std::cout << "U of X_2(1), L = lambda h + mu f\n";
    std::cout << "lambda,mu,aL,logExponent,C,caseTag\n";
    for (const auto& r : j["hirzebruch"])
      std::cout << r["lambda"] << ',' << r["mu"] << ',' << r["aL"].get<std::string>() << ',' << r["logExponent"] << ','
                << fmt(r["C"].get<double>()) << ',' << r["caseTag"].get<std::string>() << '\n';
  }
  if (three) {
    if (hirz) std::cout << '\n';
    std::cout << "X_3(a1,a2) with the anticanonical height, X = U + U' + F'\n";
    for (const auto& r : j["threefold"]) {
      const std::string label = r["case"].get<std::string>();
      const std::string rep = "(a1,a2)=(" + r["a1"].dump() + ',' + r["a2"].dump() + ')';
      std::cout << label;
      if (label != rep) std::cout << "  " << rep;
      std::cout << "  L big: "
                << (r["LBig"].get<bool>() ? "Yes" : "No") << "  M big: " << (r["MBig"].get<bool>() ? "Yes" : "No")
                << '\n';
      for (const auto& c : r["comparison"]) std::cout << "    " << c.get<std::string>() << '\n';
    }
  }
  return 0;
}

int cmd_zeta(const Options& o) {
  if (o.s.empty()) throw hk::ParseError("--s is required");
  const mpq_class sq = hk::parse_rational(o.s);
  const hk::Real s = static_cast<hk::Real>(sq.get_d());
  const auto inv = field_of(o);
  json j = {{"function", o.function}, {"s", o.s}};
  hk::Real value = 0;
  if (o.function == "zeta") {
    value = hk::zeta(s);
  } else if (o.function == "xi") {
    value = hk::xi_K(s, inv);
  } else if (o.function == "L") {
    value = hk::L_minus4(s);
  } else if (o.function == "zetaP") {
    j["m"] = o.m;
    if (o.method == "numeric") {
      const auto z = hk::zetaP_numeric(o.m, s, o.tol);
      value = z.value;
      j["tailBound"] = static_cast<double>(z.tail_bound);
      j["hMax"] = static_cast<double>(z.h_max);
      j["points"] = z.points;
    } else if (o.method == "closed") {
      value = hk::zetaP_closed_form(o.m, s);
    } else if (o.method == "lattice") {
      value = hk::zetaP_lattice(o.m, s);
    } else if (o.method == "auto") {
      value = hk::zetaP(o.m, s, inv);
    } else {
      throw hk::ParseError("--method must be auto, numeric, closed or lattice");
    }
    j["method"] = o.method;
  } else {
    throw hk::ParseError("--function must be zetaP, xi, zeta or L");
  }
  j["value"] = static_cast<double>(value);
  if (o.format == "json") {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << std::setprecision(18) << static_cast<double>(value) << '\n';
    if (j.contains("tailBound")) std::cout << "tail bound " << j["tailBound"].get<double>() << '\n';
  }
  return 0;
}

int cmd_verify(const Options& o) {
  std::vector<std::string> suites;
  if (o.suite == "all")
    suites = hk::suite_names();
  else
    suites = {o.suite};
  json report = json::array();
  bool all = true;
  for (const auto& name : suites) {
    std::vector<hk::Check> checks;
    try {
      checks = hk::run_suite(name, resolve_threads(o.threads));
    } catch (const std::invalid_argument& e) {
      throw hk::ParseError(e.what());
    }
    for (const auto& c : checks) {
      all = all && c.pass;
      json e = hk::to_json(c);
      e["suite"] = name;
      report.push_back(e);
      if (o.format != "json")
        std::cout << (c.pass ? "PASS " : "FAIL ") << '[' << name << "] " << c.name << "  observed=" << c.observed
                  << " tol=" << c.tolerance << '\n';
    }
  }
  if (o.format == "json") std::cout << json{{"pass", all}, {"checks", report}}.dump(2) << '\n';
  return all ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational points of bounded height on Hirzebruch-Kleinschmidt varieties"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--threads", o.threads, "Worker threads (default: HKCOUNT_THREADS or all cores)");
    sub->add_option("--field", o.field, "Field invariants file (default: Q)");
  };
  auto target = [&](CLI::App* sub) {
    sub->add_option("--variety", o.variety, "Variety literal r,t:a1,...,ar");
    sub->add_option("--projective", o.projective, "Projective space P^n instead of a variety");
    sub->add_option("--twist", o.twist, "Height H^twist on projective space");
    sub->add_option("--bundle", o.bundle, "Line bundle lambda,mu (default: anticanonical)");
    sub->add_option("--region", o.region, "u (good open subset), f (subbundle) or x (whole)");
  };

  auto* predict = app.add_subcommand("predict", "Asymptotic constant and exponents");
  common(predict);
  target(predict);
  auto* count = app.add_subcommand("count", "Exact number of points with H <= B");
  common(count);
  target(count);
  count->add_option("--B", o.bound, "Height bound (p/q or decimal)");
  count->add_flag("--stream", o.stream, "Print every point before the count");
  auto* sweep = app.add_subcommand("sweep", "Counts and predictions over a grid of bounds");
  common(sweep);
  target(sweep);
  sweep->add_option("--grid", o.grid, "Comma list, geom:start:ratio:count or lin:start:step:count");
  auto* tables = app.add_subcommand("tables", "Constant tables for X_2(1) and the threefolds X_3(a1,a2)");
  common(tables);
  tables->add_option("--table", o.table, "hirzebruch, threefold or all");
  auto* zeta = app.add_subcommand("zeta", "Evaluate Z_{P^m}, xi, zeta or L_{-4}");
  common(zeta);
  zeta->add_option("--function", o.function, "zetaP, xi, zeta or L");
  zeta->add_option("--s", o.s, "Argument");
  zeta->add_option("--m", o.m, "Projective dimension for zetaP");
  zeta->add_option("--tol", o.tol, "Tolerance for --method numeric");
  zeta->add_option("--method", o.method, "auto, numeric, closed or lattice");
  auto* verify = app.add_subcommand("verify", "Run self-check suites");
  common(verify);
  verify->add_option("--suite", o.suite, "arakelov, integral, residue, partition, oracle or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (predict->parsed()) return cmd_predict(o);
    if (count->parsed()) return cmd_count(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (tables->parsed()) return cmd_tables(o);
    if (zeta->parsed()) return cmd_zeta(o);
    if (verify->parsed()) return cmd_verify(o);
  } catch (const hk::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const hk::NotBig& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what;
    if (what.find("infinite") == std::string::npos) std::cerr << " (the count is infinite)";
    std::cerr << '\n';
    return kExitNotBig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOther;
}
