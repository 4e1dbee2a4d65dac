#pragma once

#include <string>
#include <variant>

#include "iknap/model.hpp"
#include "iknap/rational.hpp"

namespace iknap {

using Instance = std::variant<IikInstance, MinkInstance>;

/// Reads a JSON instance document: {"type":"iik"|"mink", ...}. Numbers may
/// be integers, decimal strings, or fraction strings; binary floats with a
/// fractional part are rejected so values stay exact. Multiplicity entries
/// admit "inf" for unbounded copies. Validation failures carry the offending
/// field in the message.
Instance parse_instance(const std::string& text);

std::string instance_to_json(const IikInstance& inst);
std::string instance_to_json(const MinkInstance& inst);

/// File helpers used by the CLI and the experiment runner.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
Instance load_instance(const std::string& path);

}  // namespace iknap
