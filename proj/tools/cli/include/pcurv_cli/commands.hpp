#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pcurv_cli/report.hpp"
#include "pcurv_cli/spec.hpp"

namespace pcurv::cli {

struct CommandResult {
  Report report;
  int exit_code = kExitOk;
};

struct ScanOptions {
  std::optional<PrimeRange> primes;
  unsigned jobs = 1;
  bool emit_psi = false;
};

/// ConnectionSpec: {"field", "variable", "derivation", "matrix" | "companion", "primes"}.
CommandResult run_scan(const json& spec, const std::string& spec_path, const ScanOptions& options);

struct AnalyzeOptions {
  std::optional<PrimeRange> primes;
  std::uint64_t seed = 0;
};

/// Companion connections over F_p(q)(x): {"primes" | "prime", "variable",
/// "parameter", "derivation", "companion" | "matrix"}; entries are expressions
/// in both variables, reduced mod each prime.
CommandResult run_analyze(const json& spec, const std::string& spec_path, const AnalyzeOptions& options);

struct CertifyCommandOptions {
  std::optional<std::size_t> max_elements;
  std::optional<unsigned long> max_order;
  std::optional<unsigned> precision_cap;
  unsigned jobs = 1;
  bool projective = false;
};

CommandResult run_certify(const json& spec, const std::string& spec_path, const CertifyCommandOptions& options);

struct NormalizeOptions {
  std::optional<std::size_t> ansatz_degree;
};

CommandResult run_normalize(const json& spec, const std::string& spec_path, const NormalizeOptions& options);
CommandResult run_conjugate(const json& spec, const std::string& spec_path);

/// Parses argv with CLI11, loads the spec, runs the command and prints the
/// report. Shared entry point of the pcurv, rep and deform executables.
int run_tool(const std::string& tool, int argc, char** argv);

}  // namespace pcurv::cli
