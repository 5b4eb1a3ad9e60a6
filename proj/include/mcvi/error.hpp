#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcvi {

enum class ErrorKind {
  // ingest
  MalformedCsv,
  SchemaMismatch,
  DomainError,
  UnknownEconomy,
  InvalidConfig,
  Io,
  // dimensions / normalize / index
  EmptyPartnerSet,
  NoActivePorts,
  AllMissing,
  ConstantColumn,
  InvalidWeights,
  EmptyIndex,
  // stats
  DegenerateVariance,
  NonConvergence,
  InsufficientData,
  ZeroVariance,
  InvalidK,
  SingleCluster,
  RankDeficient,
  TooFewClusters,
  NoWithinVariation,
  NoCommonRegressors,
  EmptySample,
  DegenerateTime,
  // uncertainty / analysis
  AllVariancesZero,
  InsufficientYears,
  InsufficientOverlap,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `key()` names the offending record
/// (economy code, file:line, regressor name) when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string key = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        key_(std::move(key)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& key() const noexcept { return key_; }

 private:
  ErrorKind kind_;
  std::string key_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedCsv: return "MalformedCsv";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::UnknownEconomy: return "UnknownEconomy";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
    case ErrorKind::EmptyPartnerSet: return "EmptyPartnerSet";
    case ErrorKind::NoActivePorts: return "NoActivePorts";
    case ErrorKind::AllMissing: return "AllMissing";
    case ErrorKind::ConstantColumn: return "ConstantColumn";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::EmptyIndex: return "EmptyIndex";
    case ErrorKind::DegenerateVariance: return "DegenerateVariance";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::InvalidK: return "InvalidK";
    case ErrorKind::SingleCluster: return "SingleCluster";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::TooFewClusters: return "TooFewClusters";
    case ErrorKind::NoWithinVariation: return "NoWithinVariation";
    case ErrorKind::NoCommonRegressors: return "NoCommonRegressors";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::DegenerateTime: return "DegenerateTime";
    case ErrorKind::AllVariancesZero: return "AllVariancesZero";
    case ErrorKind::InsufficientYears: return "InsufficientYears";
    case ErrorKind::InsufficientOverlap: return "InsufficientOverlap";
  }
  return "Unknown";
}

}  // namespace mcvi
