#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "slmod/torus_lie.hpp"

namespace slmod {

enum class Status { Pass, Fail, Skipped };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skipped: return "SKIPPED";
  }
  return "?";
}

using Value = std::variant<std::int64_t, std::string>;

inline std::string to_string(const Value& v) {
  if (auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  return std::get<std::string>(v);
}

struct Detail {
  std::optional<Degree> degree;
  std::string label;
  Value expected;
  Value actual;
  Status status = Status::Pass;
};

inline Value dim_value(std::size_t d) { return static_cast<std::int64_t>(d); }

struct Report {
  std::vector<Detail> details;

  void add(Detail d) { details.push_back(std::move(d)); }
  // Records a comparison, passing when the two values agree.
  void expect(std::optional<Degree> k, std::string label, Value expected, Value actual) {
    Status s = expected == actual ? Status::Pass : Status::Fail;
    details.push_back({std::move(k), std::move(label), std::move(expected), std::move(actual), s});
  }
  void expect_true(std::optional<Degree> k, std::string label, bool ok, std::string actual_if_bad = "false") {
    details.push_back({std::move(k), std::move(label), std::string("true"), ok ? std::string("true") : actual_if_bad,
                       ok ? Status::Pass : Status::Fail});
  }
  void skip(std::optional<Degree> k, std::string label, std::string why) {
    details.push_back({std::move(k), std::move(label), std::string("n/a"), std::move(why), Status::Skipped});
  }
  void append(const Report& o, const std::string& prefix = "") {
    for (auto d : o.details) {
      if (!prefix.empty()) d.label = prefix + (d.label.empty() ? "" : " " + d.label);
      details.push_back(std::move(d));
    }
  }

  std::size_t count(Status s) const {
    std::size_t c = 0;
    for (const auto& d : details) c += d.status == s;
    return c;
  }
  Status status() const {
    if (count(Status::Fail)) return Status::Fail;
    if (count(Status::Pass)) return Status::Pass;
    return Status::Skipped;
  }
  bool passed() const { return status() == Status::Pass; }
};

}  // namespace slmod
