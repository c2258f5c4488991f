#pragma once

#include <stdexcept>
#include <string>

namespace cmrp {

enum class ErrorCode {
  config,
  io,
  domain,
  divergent_mgf,
  non_equivalent_supports,
  invalid_tilt,
  invalid_reweight,
  no_root,
  no_positive_root,
  unsupported_claim_law,
  explosion,
  model,
  degenerate_check,
  internal,
};

/// Base class for all library errors; carries a stable code for the C API.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorCode::config, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorCode::io, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::domain, w) {}
};
struct DivergentMgf : Error {
  explicit DivergentMgf(const std::string& w) : Error(ErrorCode::divergent_mgf, w) {}
};
struct NonEquivalentSupports : Error {
  explicit NonEquivalentSupports(const std::string& w)
      : Error(ErrorCode::non_equivalent_supports, w) {}
};
struct InvalidTilt : Error {
  explicit InvalidTilt(const std::string& w) : Error(ErrorCode::invalid_tilt, w) {}
};
struct InvalidReweight : Error {
  explicit InvalidReweight(const std::string& w) : Error(ErrorCode::invalid_reweight, w) {}
};
struct NoRoot : Error {
  explicit NoRoot(const std::string& w) : Error(ErrorCode::no_root, w) {}
};
struct NoPositiveRoot : Error {
  explicit NoPositiveRoot(const std::string& w) : Error(ErrorCode::no_positive_root, w) {}
};
struct UnsupportedClaimLaw : Error {
  explicit UnsupportedClaimLaw(const std::string& w)
      : Error(ErrorCode::unsupported_claim_law, w) {}
};
struct ExplosionGuard : Error {
  explicit ExplosionGuard(const std::string& w) : Error(ErrorCode::explosion, w) {}
};
struct ModelError : Error {
  explicit ModelError(const std::string& w) : Error(ErrorCode::model, w) {}
};
struct DegenerateCheck : Error {
  explicit DegenerateCheck(const std::string& w) : Error(ErrorCode::degenerate_check, w) {}
};

}  // namespace cmrp
