#pragma once

// JSON form of verification reports, shared by the CLI and its tests.

#include <nlohmann/json.hpp>

#include "degamma/verify.hpp"

namespace degamma::cli {

inline nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline nlohmann::json report_json(const CheckReport& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"s", complex_json(f.s)},
                        {"lambda", f.lambda},
                        {"path", f.path},
                        {"observed", complex_json(f.observed)},
                        {"expected", complex_json(f.expected)},
                        {"rel_err", f.rel_err}});
  }
  nlohmann::json j = {{"check_name", r.check_name},
                      {"sample_count", r.sample_count},
                      {"rejected_draws", r.rejected_draws},
                      {"max_rel_err", r.max_rel_err},
                      {"tolerance", r.tolerance},
                      {"failure_count", r.failure_count},
                      {"failures", failures},
                      {"passed", r.passed}};
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.paths.empty()) {
    nlohmann::json paths = nlohmann::json::object();
    for (const auto& [name, p] : r.paths) {
      paths[name] = {{"evaluated", p.evaluated},
                     {"skipped", p.skipped},
                     {"max_rel_dev", p.max_rel_dev},
                     {"tolerance", p.tolerance},
                     {"applicable", p.evaluated > 0}};
    }
    j["paths"] = paths;
  }
  return j;
}

}  // namespace degamma::cli
