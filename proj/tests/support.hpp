#pragma once

// Shared fixtures and helpers for the test suite.

#include <filesystem>
#include <string>

#include "foecm/gl_model.hpp"
#include "foecm/precision.hpp"

namespace testsupport {

using foecm::ContextPtr;
using foecm::ModelParams;
using foecm::PrecisionContext;
using foecm::Real;

// Sampling period that makes the reference cell's transfer function
// come out with g_{2T+1} = -1.2962: ts = (0.0038 * 0.6)^(1/0.8).
inline constexpr const char* kTsText =
    "0.00049821701886070159744850244703141063812635385";

/** The 60-digit context every deterministic test runs under. */
inline const ContextPtr& ctx60() {
  static const ContextPtr ctx = PrecisionContext::create(60, 500);
  ctx->activate();
  return ctx;
}

/**
 * The reference cell: r_inf = 0.01, r1 = 0.2, c1 = 3, alpha1 = 0.8,
 * c2 = 400, alpha2 = 0.5, with the fitted sampling period above.
 */
inline ModelParams reference_cell(const ContextPtr& ctx, int horizon = 100) {
  ctx->activate();
  ModelParams p;
  p.ctx = ctx;
  p.r_inf = Real("0.01");
  p.r1 = Real("0.2");
  p.c1 = Real(3);
  p.alpha1 = Real("0.8");
  p.c2 = Real(400);
  p.alpha2 = Real("0.5");
  p.ts = Real(kTsText);
  p.horizon = horizon;
  return p;
}

/** |a - b| / max(|b|, tiny): relative difference against reference b. */
inline Real rel_diff(const Real& a, const Real& b) {
  const Real scale = abs(b);
  if (scale == 0) {
    return abs(a);
  }
  return abs(a - b) / scale;
}

/** Scratch file path under the system temp directory. */
inline std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("foecm_test_" + name)).string();
}

/** Removes a scratch file on scope exit. */
class TempFile {
 public:
  explicit TempFile(const std::string& name) : path_(temp_path(name)) {}
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace testsupport
