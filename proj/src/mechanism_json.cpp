#include "rropt/mechanism_json.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "rropt/errors.hpp"

namespace rropt {

namespace {

std::vector<double> number_array(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw Error(std::string("mechanism JSON needs a \"") + key + "\" array");
  }
  std::vector<double> out;
  out.reserve(j[key].size());
  for (const auto& v : j[key]) {
    if (!v.is_number()) {
      throw Error(std::string("non-numeric entry in \"") + key + "\"");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::string mechanism_to_json(const MechanismPair& pair) {
  nlohmann::json j;
  j["p0"] = pair.p0.entries();
  j["p1"] = pair.p1.entries();
  return j.dump();
}

MechanismPair mechanism_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid mechanism JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("mechanism JSON must be an object");
  return MechanismPair(make_distribution(number_array(j, "p0")),
                       make_distribution(number_array(j, "p1")));
}

MechanismPair load_mechanism(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open mechanism file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return mechanism_from_json(buf.str());
}

}  // namespace rropt
