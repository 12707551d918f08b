#include "wcz/jsonio.hpp"

#include <stdexcept>

namespace wcz {

nlohmann::json rat_to_json(const Rat& q) {
  return nlohmann::json::array({q.get_num().get_str(), q.get_den().get_str()});
}

Rat rat_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("rat_from_json: expected [num, den]");
  Rat q(Int(j[0].get<std::string>()), Int(j[1].get<std::string>()));
  if (q.get_den() == 0) throw std::invalid_argument("rat_from_json: zero denominator");
  q.canonicalize();
  return q;
}

nlohmann::json rat_vec_to_json(const std::vector<Rat>& v, size_t first) {
  nlohmann::json a = nlohmann::json::array();
  for (size_t i = first; i < v.size(); ++i) a.push_back(rat_to_json(v[i]));
  return a;
}

std::vector<Rat> rat_vec_from_json(const nlohmann::json& j, size_t first) {
  std::vector<Rat> v(first, Rat(0));
  for (const auto& e : j) v.push_back(rat_from_json(e));
  return v;
}

}  // namespace wcz
