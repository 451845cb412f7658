#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "imp/analysis.hpp"
#include "imp/estimation.hpp"
#include "imp/sweep.hpp"

namespace imp {

inline constexpr const char* kToolName = "imp-space";
inline constexpr const char* kToolVersion = "1.0.0";

class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// position,length,halted,steps,output
inline constexpr const char* kRecordHeader = "position,length,halted,steps,output";
void write_record_header(std::ostream& os);
void write_record(std::ostream& os, const RunRecord& r);
// Parses one data line of the record CSV; throws std::invalid_argument.
RunRecord parse_record(const std::string& line);

// position,length,steps
inline constexpr const char* kSampleHeader = "position,length,steps";
void write_sample_csv(std::ostream& os, const HaltingSample& s);
nlohmann::json sample_sidecar(const HaltingSample& s);

// output,best_length,witness,producers
inline constexpr const char* kComplexityHeader = "output,best_length,witness,producers";
void write_complexity_csv(std::ostream& os, const ComplexityTable& table);

// Objects keyed by decimal integer strings.
nlohmann::json census_json(const std::vector<CensusRow>& rows);
nlohmann::json histograms_json(const Histograms& h);
nlohmann::json costs_json(const StepCosts& c);

// Lowercase hex SHA-256 of a byte string or a file's contents.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

// Sidecar describing a batch job: the exact job configuration, the tool
// version and a digest per produced file (paths relative to the manifest).
class Manifest {
 public:
  Manifest(std::string command, nlohmann::json config);

  // role: records, sample, census, histograms, complexity or sidecar.
  void add_file(const std::filesystem::path& dir, const std::string& relative, const std::string& role);
  nlohmann::json to_json() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::string command_;
  nlohmann::json config_;
  nlohmann::json files_ = nlohmann::json::array();
};

struct AuditReport {
  std::vector<std::string> hash_failures;
  std::vector<std::string> replay_failures;
  std::uint64_t files_checked = 0;
  std::uint64_t records_replayed = 0;
  bool ok() const { return hash_failures.empty() && replay_failures.empty(); }
};

// Verifies every digest in the manifest, then re-executes `spot_checks`
// randomly chosen rows of any record CSV it lists and compares them.
AuditReport audit_manifest(const std::filesystem::path& manifest_path, std::uint64_t spot_checks,
                           std::uint64_t seed);

}  // namespace imp
