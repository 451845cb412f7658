#include "imp/io.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include <openssl/evp.h>

namespace imp {

namespace fs = std::filesystem;
using nlohmann::json;

IoError::IoError(const fs::path& path, const std::string& what)
    : std::runtime_error(path.string() + ": " + what), path_(path) {}

void write_record_header(std::ostream& os) { os << kRecordHeader << '\n'; }

void write_record(std::ostream& os, const RunRecord& r) {
  os << r.position << ',' << r.length << ',' << (r.halted ? 1 : 0) << ',' << r.steps << ',' << r.output.str() << '\n';
}

RunRecord parse_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  if (fields.size() != 5) throw std::invalid_argument("record line needs 5 fields: '" + line + "'");
  RunRecord r;
  r.position = std::stoull(fields[0]);
  r.length = static_cast<std::uint32_t>(std::stoul(fields[1]));
  if (fields[2] != "0" && fields[2] != "1") throw std::invalid_argument("halted flag must be 0 or 1");
  r.halted = fields[2] == "1";
  r.steps = std::stoull(fields[3]);
  r.output = Bitstring(fields[4]);
  return r;
}

void write_sample_csv(std::ostream& os, const HaltingSample& s) {
  os << kSampleHeader << '\n';
  for (const auto& e : s.entries) os << e.position << ',' << e.length << ',' << e.steps << '\n';
}

json costs_json(const StepCosts& c) {
  return {{"statement", c.statement}, {"operator", c.operator_node}, {"leaf", c.leaf}};
}

json sample_sidecar(const HaltingSample& s) {
  json per_length = json::object();
  for (const auto& [len, n] : s.per_length) per_length[std::to_string(len)] = n;
  const Threshold t = s.threshold();
  return {
      {"params",
       {{"epsilon", to_string(s.params.epsilon)},
        {"lambda", to_string(s.params.lambda)},
        {"delta", to_string(s.params.delta)}}},
      {"max_length", s.max_length},
      {"space_size", s.space_size.str()},
      {"seed", s.seed},
      {"budget", s.probe_budget},
      {"costs", costs_json(s.costs)},
      {"sampled", s.entries.size()},
      {"rejections", s.rejections},
      {"halting_rate", s.halting_rate()},
      {"per_length", per_length},
      {"threshold", t.max_runtime},
      {"quantile", t.quantile},
  };
}

void write_complexity_csv(std::ostream& os, const ComplexityTable& table) {
  os << kComplexityHeader << '\n';
  for (const auto& e : table.sorted()) {
    os << e.output.str() << ',' << e.best_length << ',' << e.witness << ',' << e.producers << '\n';
  }
}

json census_json(const std::vector<CensusRow>& rows) {
  json out = json::object();
  for (const auto& r : rows) {
    out[std::to_string(r.length)] = {{"halt", r.halting},
                                     {"non_halt", r.non_halting},
                                     {"halt_percent", r.halting_percent},
                                     {"non_halt_percent", r.non_halting_percent}};
  }
  return out;
}

json histograms_json(const Histograms& h) {
  json length_steps = json::object();
  for (const auto& [len, row] : h.length_steps()) {
    json r = json::object();
    for (const auto& [steps, n] : row) r[std::to_string(steps)] = n;
    length_steps[std::to_string(len)] = r;
  }
  json output_length = json::object();
  for (const auto& [olen, n] : h.output_length()) output_length[std::to_string(olen)] = n;
  json length_output = json::object();
  for (const auto& [len, row] : h.length_output()) {
    json r = json::object();
    for (const auto& [olen, n] : row) r[std::to_string(olen)] = n;
    length_output[std::to_string(len)] = r;
  }
  return {{"length_steps", length_steps}, {"output_length", output_length}, {"length_output", length_output}};
}

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (ctx_ == nullptr || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("cannot initialise SHA-256");
    }
  }
  ~Sha256() { EVP_MD_CTX_free(ctx_); }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(const char* data, std::size_t n) { EVP_DigestUpdate(ctx_, data, n); }

  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_, md, &len);
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
      out += digits[md[i] >> 4];
      out += digits[md[i] & 15];
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  Sha256 h;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

Manifest::Manifest(std::string command, json config) : command_(std::move(command)), config_(std::move(config)) {}

void Manifest::add_file(const fs::path& dir, const std::string& relative, const std::string& role) {
  const fs::path full = dir / relative;
  std::error_code ec;
  const auto bytes = fs::file_size(full, ec);
  if (ec) throw IoError(full, ec.message());
  files_.push_back({{"path", relative}, {"role", role}, {"bytes", bytes}, {"sha256", sha256_file(full)}});
}

json Manifest::to_json() const {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"command", command_}, {"config", config_},
          {"files", files_}};
}

void Manifest::write(const fs::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  out << to_json().dump(2) << '\n';
  if (!out) throw IoError(path, "write failed");
}

namespace {

StepCosts costs_from_json(const json& j) {
  StepCosts c;
  if (j.contains("statement")) c.statement = j.at("statement").get<std::uint32_t>();
  if (j.contains("operator")) c.operator_node = j.at("operator").get<std::uint32_t>();
  if (j.contains("leaf")) c.leaf = j.at("leaf").get<std::uint32_t>();
  return c;
}

std::vector<std::string> data_lines(const fs::path& path, const char* header) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  std::string line;
  if (!std::getline(in, line) || line != header) throw IoError(path, "unexpected CSV header");
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

AuditReport audit_manifest(const fs::path& manifest_path, std::uint64_t spot_checks, std::uint64_t seed) {
  std::ifstream in(manifest_path);
  if (!in) throw IoError(manifest_path, "cannot open for reading");
  json m;
  try {
    in >> m;
  } catch (const json::exception& e) {
    throw IoError(manifest_path, std::string("invalid manifest: ") + e.what());
  }
  const fs::path dir = manifest_path.parent_path();
  const json& config = m.at("config");

  AuditReport report;
  for (const auto& f : m.at("files")) {
    const fs::path full = dir / f.at("path").get<std::string>();
    ++report.files_checked;
    std::string actual;
    try {
      actual = sha256_file(full);
    } catch (const IoError& e) {
      report.hash_failures.push_back(e.what());
      continue;
    }
    if (actual != f.at("sha256").get<std::string>()) {
      report.hash_failures.push_back(full.string() + ": digest mismatch");
    }
  }
  if (spot_checks == 0 || !report.hash_failures.empty()) return report;

  const CountTable& table = CountTable::shared();
  SweepOptions options;
  options.budget = config.at("budget").get<std::uint64_t>();
  if (config.contains("costs")) options.costs = costs_from_json(config.at("costs"));
  auto rng = substream(seed, 0);
  Program scratch;

  for (const auto& f : m.at("files")) {
    const std::string role = f.at("role").get<std::string>();
    if (role != "records" && role != "sample") continue;
    const fs::path full = dir / f.at("path").get<std::string>();
    const auto lines = data_lines(full, role == "records" ? kRecordHeader : kSampleHeader);
    if (lines.empty()) continue;
    for (std::uint64_t i = 0; i < spot_checks; ++i) {
      const std::string& line = lines[uniform_below(rng, static_cast<std::uint64_t>(lines.size()))];
      try {
        RunRecord expected;
        if (role == "records") {
          expected = parse_record(line);
        } else {
          std::istringstream row(line);
          std::string pos, len, steps;
          std::getline(row, pos, ',');
          std::getline(row, len, ',');
          std::getline(row, steps, ',');
          expected.position = std::stoull(pos);
          expected.length = static_cast<std::uint32_t>(std::stoul(len));
          expected.steps = std::stoull(steps);
          expected.halted = true;
        }
        RunRecord actual = execute_position(table, expected.position, options, scratch);
        if (role == "sample") actual.output = Bitstring();
        ++report.records_replayed;
        if (!(actual == expected)) report.replay_failures.push_back(full.string() + ": replay differs for '" + line + "'");
      } catch (const std::exception& e) {
        report.replay_failures.push_back(full.string() + ": " + e.what());
      }
    }
  }
  return report;
}

}  // namespace imp
