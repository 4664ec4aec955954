#pragma once

#include "perind/integer.hpp"

#include <json.hpp>

#include <string>

namespace perind {

/// Integers are written as JSON numbers when they fit in a signed 64-bit
/// value and as decimal strings otherwise. Readers accept both.
nlohmann::json integer_to_json(const Integer& x);
Integer integer_from_json(const nlohmann::json& j);

/// Parses a file, mapping I/O and syntax failures to ErrorKind::MalformedInput.
nlohmann::json read_json_file(const std::string& path);

} // namespace perind
