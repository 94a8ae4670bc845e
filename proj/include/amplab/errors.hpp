#pragma once

#include <stdexcept>
#include <string>

namespace amplab {

struct NoSignChange : std::runtime_error {
  explicit NoSignChange(const std::string& msg) : std::runtime_error(msg) {}
};

struct MaxIterExceeded : std::runtime_error {
  MaxIterExceeded(const std::string& msg, double last, double residual)
      : std::runtime_error(msg + " (last=" + std::to_string(last) +
                           ", residual=" + std::to_string(residual) + ")"),
        last_iterate(last),
        last_residual(residual) {}
  double last_iterate;
  double last_residual;
};

struct BracketFailure : std::runtime_error {
  explicit BracketFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoSolution : std::runtime_error {
  explicit NoSolution(const std::string& msg) : std::runtime_error(msg) {}
};

struct AbovePT : std::runtime_error {
  explicit AbovePT(const std::string& msg) : std::runtime_error(msg) {}
};

struct OversaturatedModel : std::runtime_error {
  explicit OversaturatedModel(const std::string& msg) : std::runtime_error(msg) {}
};

struct InadmissibleGamma : std::runtime_error {
  explicit InadmissibleGamma(const std::string& msg) : std::runtime_error(msg) {}
};

struct Diverged : std::runtime_error {
  explicit Diverged(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace amplab
