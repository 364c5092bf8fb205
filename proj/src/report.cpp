#include "hk/report.hpp"

#include <sstream>

#include "hk/errors.hpp"
#include "hk/literals.hpp"

namespace hk {

nlohmann::json to_json(const AsymptoticPrediction& p) {
  return {{"aL", p.a_l.get_str()},
          {"logExponent", p.log_exponent},
          {"C", static_cast<double>(p.C)},
          {"caseTag", p.case_tag},
          {"sourceTheorem", p.source}};
}

AsymptoticPrediction prediction_from_json(const nlohmann::json& j) {
  try {
    AsymptoticPrediction p;
    p.a_l = parse_rational(j.at("aL").get<std::string>());
    p.log_exponent = j.at("logExponent").get<int>();
    p.C = j.at("C").get<double>();
    p.case_tag = j.at("caseTag").get<std::string>();
    p.source = j.at("sourceTheorem").get<std::string>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed prediction record: ") + e.what());
  }
}

nlohmann::json to_json(const CountResult& r) {
  return {{"count", r.count.get_str()}, {"elapsed", r.elapsed}, {"pointsVisited", r.points_visited}};
}

nlohmann::json to_json(const SweepRow& row) {
  return {{"B", format_rational(row.bound)},
          {"count", row.count.get_str()},
          {"predicted", row.predicted},
          {"ratio", row.ratio},
          {"elapsed", row.elapsed}};
}

nlohmann::json to_json(const Check& c) {
  return {{"name", c.name},
          {"pass", c.pass},
          {"observed", c.observed},
          {"tolerance", c.tolerance},
          {"detail", c.detail}};
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os.precision(12);
  os << "B,count,predicted,ratio\n";
  for (const auto& r : rows)
    os << format_rational(r.bound) << ',' << r.count.get_str() << ',' << r.predicted << ',' << r.ratio << '\n';
  return os.str();
}

}  // namespace hk
