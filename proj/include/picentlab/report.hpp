#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace picent {

inline constexpr std::string_view kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct CheckResult {
  std::string name;
  std::string anchor;
  bool passed = false;
  Json witness;  // null when there is nothing to show
  std::int64_t millis = 0;
};

/// A conclusion that is not recomputed here but follows from the checks by a
/// cited argument. It is reported as holding only when every check passed.
struct Label {
  std::string text;
  std::string justification;
  bool holds = false;
};

struct VerificationReport {
  std::string command;
  Json params = Json::object();
  std::optional<std::uint64_t> seed;
  std::vector<CheckResult> checks;
  std::vector<Label> labels;
  Json timing = Json::object();
  Json data;  // command-specific payload, emitted when not null

  bool verdict() const;

  /// Runs `body` and records its outcome; an exception thrown by the body is
  /// recorded as a failing check with the message as witness.
  void run_check(const std::string& name, const std::string& anchor,
                 const std::function<bool(Json& witness)>& body);
  void add_label(std::string text, std::string justification);

  /// The "millis" fields and "timing" are omitted when with_timing is false.
  Json to_json(bool with_timing = true) const;
  std::string to_text() const;
};

inline constexpr std::string_view kPaperJustified = "paper-justified label";

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t millis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace picent
