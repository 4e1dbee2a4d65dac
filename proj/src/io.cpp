#include "iknap/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace iknap {

namespace {

using nlohmann::json;

Rational field_rational(const json& v, const std::string& field) {
  if (v.is_number_integer()) {
    return Rational(Integer(v.get<long long>()), Integer(1));
  }
  if (v.is_number_unsigned()) {
    return Rational(Integer(v.get<unsigned long long>()), Integer(1));
  }
  if (v.is_number_float()) {
    throw std::invalid_argument(
        field + ": write non-integer numbers as strings (\"a/b\" or decimal) "
                "so they stay exact");
  }
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(field + ": " + e.what());
    }
  }
  throw std::invalid_argument(field + ": expected a number or numeric string");
}

std::vector<Rational> field_array(const json& doc, const std::string& field) {
  if (!doc.contains(field) || !doc[field].is_array()) {
    throw std::invalid_argument(field + ": required array missing");
  }
  std::vector<Rational> out;
  int idx = 0;
  for (const json& v : doc[field]) {
    out.push_back(field_rational(v, field + "[" + std::to_string(idx) + "]"));
    ++idx;
  }
  return out;
}

Integer field_integer(const json& v, const std::string& field) {
  Rational q = field_rational(v, field);
  if (denominator(q) != 1) {
    throw std::invalid_argument(field + ": expected an integer");
  }
  return numerator(q);
}

void check_count(const json& doc, const std::string& field, std::size_t got) {
  if (!doc.contains(field)) return;
  Integer stated = field_integer(doc[field], field);
  if (stated != Integer(static_cast<long>(got))) {
    throw std::invalid_argument(field + ": does not match the array lengths");
  }
}

json rational_to_json(const Rational& q) {
  if (denominator(q) == 1) {
    const Integer& num = numerator(q);
    if (num >= std::numeric_limits<long long>::min() &&
        num <= std::numeric_limits<long long>::max()) {
      return json(static_cast<long long>(num));
    }
  }
  return json(to_fraction_string(q));
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
    throw std::invalid_argument("type: required field, \"iik\" or \"mink\"");
  }
  const std::string type = doc["type"].get<std::string>();

  if (type == "mink") {
    return MinkInstance::validated(
        field_array(doc, "costs"), field_array(doc, "weights"),
        field_rational(doc.contains("demand") ? doc["demand"] : json(),
                       "demand"));
  }
  if (type != "iik") {
    throw std::invalid_argument("type: unknown value '" + type + "'");
  }

  std::vector<Rational> profits = field_array(doc, "profits");
  std::vector<Rational> weights = field_array(doc, "weights");
  std::vector<Rational> capacities = field_array(doc, "capacities");
  check_count(doc, "n", profits.size());
  check_count(doc, "T", capacities.size());

  std::vector<Integer> discounts;
  if (doc.contains("discounts")) {
    if (!doc["discounts"].is_array()) {
      throw std::invalid_argument("discounts: expected an array");
    }
    int idx = 0;
    for (const json& v : doc["discounts"]) {
      discounts.push_back(
          field_integer(v, "discounts[" + std::to_string(idx) + "]"));
      ++idx;
    }
  }
  std::vector<std::optional<Integer>> multiplicities;
  if (doc.contains("multiplicities")) {
    if (!doc["multiplicities"].is_array()) {
      throw std::invalid_argument("multiplicities: expected an array");
    }
    int idx = 0;
    for (const json& v : doc["multiplicities"]) {
      const std::string field = "multiplicities[" + std::to_string(idx) + "]";
      if (v.is_string() && v.get<std::string>() == "inf") {
        multiplicities.emplace_back(std::nullopt);
      } else {
        multiplicities.emplace_back(field_integer(v, field));
      }
      ++idx;
    }
  }
  return IikInstance::validated(std::move(profits), std::move(weights),
                                std::move(capacities), std::move(discounts),
                                std::move(multiplicities));
}

std::string instance_to_json(const IikInstance& inst) {
  json doc;
  doc["type"] = "iik";
  doc["n"] = inst.n();
  doc["T"] = inst.T();
  json profits = json::array(), weights = json::array(),
       capacities = json::array();
  for (const Rational& p : inst.profit) profits.push_back(rational_to_json(p));
  for (const Rational& w : inst.weight) weights.push_back(rational_to_json(w));
  for (const Rational& b : inst.capacity) {
    capacities.push_back(rational_to_json(b));
  }
  doc["profits"] = std::move(profits);
  doc["weights"] = std::move(weights);
  doc["capacities"] = std::move(capacities);
  if (!inst.discount.empty()) {
    json discounts = json::array();
    for (const Integer& d : inst.discount) {
      discounts.push_back(rational_to_json(Rational(d, Integer(1))));
    }
    doc["discounts"] = std::move(discounts);
  }
  if (inst.has_multiplicities()) {
    json mults = json::array();
    for (const auto& m : inst.multiplicity) {
      if (m) {
        mults.push_back(rational_to_json(Rational(*m, Integer(1))));
      } else {
        mults.push_back("inf");
      }
    }
    doc["multiplicities"] = std::move(mults);
  }
  return doc.dump(2) + "\n";
}

std::string instance_to_json(const MinkInstance& inst) {
  json doc;
  doc["type"] = "mink";
  json costs = json::array(), weights = json::array();
  for (const Rational& c : inst.cost) costs.push_back(rational_to_json(c));
  for (const Rational& w : inst.weight) weights.push_back(rational_to_json(w));
  doc["costs"] = std::move(costs);
  doc["weights"] = std::move(weights);
  doc["demand"] = rational_to_json(inst.demand);
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

Instance load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

}  // namespace iknap
