#ifndef UAVSIM_ERRORS_H_
#define UAVSIM_ERRORS_H_

#include <optional>
#include <stdexcept>
#include <string>

namespace uavsim {

// Base of every error the library raises. `name()` is the stable error kind
// reported by the command-line tool (e.g. "DepthCollapse").
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& message)
      : std::runtime_error(message), name_(std::move(name)) {}

  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Numerical or geometric failure while simulating. The engine attaches the id
// of the agent whose update raised it.
class SimulationError : public Error {
 public:
  using Error::Error;

  std::optional<int> agent_id() const { return agent_id_; }
  void set_agent_id(int id) { agent_id_ = id; }

 private:
  std::optional<int> agent_id_;
};

#define UAVSIM_DEFINE_SIM_ERROR(Kind)                  \
  class Kind : public SimulationError {                \
   public:                                             \
    explicit Kind(const std::string& message)          \
        : SimulationError(#Kind, message) {}           \
  };

UAVSIM_DEFINE_SIM_ERROR(DepthNonPositive)
UAVSIM_DEFINE_SIM_ERROR(NonFiniteState)
UAVSIM_DEFINE_SIM_ERROR(DepthCollapse)
UAVSIM_DEFINE_SIM_ERROR(CovarianceNotPD)
UAVSIM_DEFINE_SIM_ERROR(EstimatorUninitialized)
UAVSIM_DEFINE_SIM_ERROR(SingularInteraction)
UAVSIM_DEFINE_SIM_ERROR(CoincidentAgents)
UAVSIM_DEFINE_SIM_ERROR(DegenerateAzimuth)

#undef UAVSIM_DEFINE_SIM_ERROR

// Scenario file could not be read as structured text, or a field has the
// wrong type. `line()` is 1-based when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::optional<int> line = {})
      : Error("ParseError", message), line_(line) {}
  std::optional<int> line() const { return line_; }

 private:
  std::optional<int> line_;
};

// Scenario parsed but violates an invariant; the message names it.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error("ValidationError", message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("IoError", message) {}
};

}  // namespace uavsim

#endif  // UAVSIM_ERRORS_H_
