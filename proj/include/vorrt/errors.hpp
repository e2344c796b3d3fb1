#pragma once

#include <stdexcept>
#include <string>

namespace vorrt {

// Coincident positions or zero-length directions where a bearing is required.
class DegenerateGeometry : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Planner or scenario parameters outside their valid ranges.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Scenario document that cannot be parsed or violates the schema.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed document whose content is inconsistent (duplicate ids, missing goal).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken parent chain inside a search tree.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vorrt
