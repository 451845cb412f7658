// imp-space: count, enumerate, run and explore the space of IMP programs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "imp/analysis.hpp"
#include "imp/enumeration.hpp"
#include "imp/estimation.hpp"
#include "imp/io.hpp"
#include "imp/sweep.hpp"
#include "imp/syntax.hpp"
#include "imp/vm.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit codes; the category name is also printed on stderr.
enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kSyntax = 3,
  kRange = 4,
  kIo = 5,
  kAuditFailed = 6,
};

struct Failure {
  int code;
  std::string category;
  std::string message;
};

struct Config {
  std::size_t max_length = 7;
  std::uint64_t budget = 10000;
  int workers = 1;
  std::uint64_t seed = 0;
  std::string epsilon = "0.01";
  std::string lambda = "0.005";
  std::string delta = "0.001";
  std::optional<std::uint64_t> n;
  std::string out;
  std::string format = "csv";
  std::string costs = "1,1,0";
  bool records = false;
  bool progress = false;
};

imp::StepCosts parse_costs(const std::string& text) {
  std::istringstream in(text);
  std::string part;
  std::vector<std::uint32_t> v;
  while (std::getline(in, part, ',')) v.push_back(static_cast<std::uint32_t>(std::stoul(part)));
  if (v.size() != 3) throw std::invalid_argument("--costs expects statement,operator,leaf");
  return {v[0], v[1], v[2]};
}

json job_config(const std::string& command, const Config& c) {
  const auto costs = parse_costs(c.costs);
  json j = {{"command", command},  {"max_length", c.max_length}, {"budget", c.budget},
            {"workers", c.workers}, {"seed", c.seed},             {"costs", imp::costs_json(costs)}};
  if (command == "sample") {
    j["epsilon"] = c.epsilon;
    j["lambda"] = c.lambda;
    j["delta"] = c.delta;
    if (c.n) j["n"] = *c.n;
  }
  return j;
}

fs::path prepare_dir(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw imp::IoError(dir, ec.message());
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw imp::IoError(path, "cannot open for writing");
  return f;
}

void write_json(const fs::path& path, const json& j) {
  auto f = open_out(path);
  f << j.dump(2) << '\n';
  if (!f) throw imp::IoError(path, "write failed");
}

void cmd_count(const Config& c) {
  const imp::CountTable table(std::max<std::size_t>(c.max_length, 1));
  if (c.format == "json") {
    json rows = json::object();
    for (std::size_t l = 0; l <= c.max_length; ++l) {
      rows[std::to_string(l)] = {{"programs", table.programs(l).str()}, {"accumulated", table.cumulative(l).str()}};
    }
    std::cout << rows.dump(2) << '\n';
    return;
  }
  std::cout << "length,programs,accumulated\n";
  for (std::size_t l = 0; l <= c.max_length; ++l) {
    std::cout << l << ',' << table.programs(l) << ',' << table.cumulative(l) << '\n';
  }
}

imp::BigInt parse_position(const std::string& text) {
  try {
    return imp::parse_natural(text);
  } catch (const std::invalid_argument& e) {
    throw std::out_of_range("not a position: '" + text + "'");
  }
}

void cmd_unrank(const std::string& position, bool base, std::optional<std::size_t> length) {
  const imp::BigInt k = parse_position(position);
  if (base) {
    std::cout << imp::render(imp::unrank_base(k)) << '\n';
  } else if (length) {
    const imp::CountTable table(std::max<std::size_t>(*length, imp::CountTable::kDefaultMaxLength));
    std::cout << imp::render(imp::unrank_fixed_length(table, *length, k)) << '\n';
  } else {
    std::cout << imp::render(imp::unrank_canonical(imp::CountTable::shared(), k)) << '\n';
  }
}

void cmd_rank(const std::string& text, bool base, bool fixed) {
  const imp::Program p = imp::parse(text);
  if (base) {
    std::cout << imp::rank_base(p) << '\n';
    return;
  }
  const std::size_t len = imp::program_length(p);
  const imp::CountTable table(std::max<std::size_t>(len, imp::CountTable::kDefaultMaxLength));
  std::cout << (fixed ? imp::rank_fixed_length(table, p) : imp::rank_canonical(table, p)) << '\n';
}

void cmd_run(const std::string& text, const Config& c, bool no_loop_check) {
  const imp::Program p = imp::parse(text);
  imp::RunOptions options;
  options.costs = parse_costs(c.costs);
  options.loop_check = !no_loop_check;
  const imp::RunResult r = imp::run(p, c.budget, options);
  json j = {{"halted", r.halted}, {"steps", r.steps}, {"output", r.halted ? imp::output(r.store).str() : ""}};
  std::cout << j.dump() << '\n';
}

class Progress {
 public:
  Progress(bool enabled, std::uint64_t total) : enabled_(enabled), total_(total) {}
  void advance(std::uint64_t n) {
    done_ += n;
    if (!enabled_ || total_ == 0) return;
    const std::uint64_t pct = done_ * 100 / total_;
    if (pct >= next_) {
      std::cerr << "progress " << done_ << '/' << total_ << " (" << pct << "%)\n";
      next_ = pct + 10;
    }
  }

 private:
  bool enabled_;
  std::uint64_t total_;
  std::uint64_t done_ = 0;
  std::uint64_t next_ = 0;
};

struct SweepResult {
  imp::Census census;
  imp::ComplexityTable complexity;
  imp::Histograms histograms;
};

SweepResult run_sweep(const Config& c, std::ostream* records) {
  const imp::CountTable& table = imp::CountTable::shared();
  imp::SweepOptions options;
  options.budget = c.budget;
  options.costs = parse_costs(c.costs);
  options.workers = c.workers;
  if (c.max_length > table.word_limit()) {
    throw imp::OutOfRange("sweeps are limited to length " + std::to_string(table.word_limit()));
  }
  SweepResult out;
  Progress progress(c.progress, table.cumulative_u64(c.max_length));
  if (records != nullptr) imp::write_record_header(*records);
  imp::sweep(table, c.max_length, options, [&](std::span<const imp::RunRecord> batch) {
    out.census.add(batch);
    out.complexity.add(batch);
    out.histograms.add(batch);
    if (records != nullptr) {
      for (const auto& r : batch) imp::write_record(*records, r);
    }
    progress.advance(batch.size());
  });
  return out;
}

void cmd_sweep(const Config& c) {
  const imp::CountTable& table = imp::CountTable::shared();
  if (c.out.empty()) {
    const SweepResult r = run_sweep(c, nullptr);
    std::cout << imp::census_json(r.census.rows(table)).dump(2) << '\n';
    return;
  }
  const fs::path dir = prepare_dir(c.out);
  imp::Manifest manifest("sweep", job_config("sweep", c));
  SweepResult r;
  if (c.records) {
    auto f = open_out(dir / "records.csv");
    r = run_sweep(c, &f);
    f.close();
    if (!f) throw imp::IoError(dir / "records.csv", "write failed");
    manifest.add_file(dir, "records.csv", "records");
  } else {
    r = run_sweep(c, nullptr);
  }
  const json census = imp::census_json(r.census.rows(table));
  write_json(dir / "census.json", census);
  manifest.add_file(dir, "census.json", "census");
  write_json(dir / "histograms.json", imp::histograms_json(r.histograms));
  manifest.add_file(dir, "histograms.json", "histograms");
  {
    auto f = open_out(dir / "complexity.csv");
    imp::write_complexity_csv(f, r.complexity);
  }
  manifest.add_file(dir, "complexity.csv", "complexity");
  manifest.write(dir / "manifest.json");
  std::cout << census.dump(2) << '\n';
}

void cmd_ctm(const Config& c) {
  const SweepResult r = run_sweep(c, nullptr);
  const std::uint64_t total = r.complexity.total_halting();
  std::ostringstream text;
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& e : r.complexity.sorted()) {
      const auto ap = imp::algorithmic_probability(r.complexity, e.output, total);
      rows.push_back({{"output", e.output.str()},
                      {"best_length", e.best_length},
                      {"witness", e.witness},
                      {"producers", e.producers},
                      {"trivial_length", imp::trivial_bound(e.output).length},
                      {"probability", imp::to_string(ap.probability)},
                      {"complexity_bits", ap.complexity_bits}});
    }
    text << json({{"total_halting", total}, {"entries", rows}}).dump(2) << '\n';
  } else {
    imp::write_complexity_csv(text, r.complexity);
  }
  if (c.out.empty()) {
    std::cout << text.str();
    return;
  }
  const fs::path dir = prepare_dir(c.out);
  const std::string name = c.format == "json" ? "ctm.json" : "complexity.csv";
  {
    auto f = open_out(dir / name);
    f << text.str();
  }
  imp::Manifest manifest("ctm", job_config("ctm", c));
  manifest.add_file(dir, name, "complexity");
  manifest.write(dir / "manifest.json");
}

void cmd_sample(const Config& c) {
  const imp::EstimationParams params(imp::parse_rational(c.epsilon), imp::parse_rational(c.lambda),
                                     imp::parse_rational(c.delta));
  imp::SampleOptions options;
  options.max_length = c.max_length;
  options.count = c.n ? *c.n : imp::sample_size(params.lambda, params.delta);
  options.probe_budget = c.budget;
  options.seed = c.seed;
  options.costs = parse_costs(c.costs);
  options.workers = c.workers;
  if (c.progress) std::cerr << "sampling " << options.count << " halting programs\n";
  const imp::HaltingSample s = imp::draw_halting_sample(imp::CountTable::shared(), options, params);
  const json sidecar = imp::sample_sidecar(s);
  if (c.out.empty()) {
    if (c.format == "json") {
      std::cout << sidecar.dump(2) << '\n';
    } else {
      imp::write_sample_csv(std::cout, s);
    }
    return;
  }
  const fs::path dir = prepare_dir(c.out);
  {
    auto f = open_out(dir / "sample.csv");
    imp::write_sample_csv(f, s);
  }
  json sidecar_with_config = sidecar;
  sidecar_with_config["config"] = job_config("sample", c);
  write_json(dir / "sample.json", sidecar_with_config);
  imp::Manifest manifest("sample", job_config("sample", c));
  manifest.add_file(dir, "sample.csv", "sample");
  manifest.add_file(dir, "sample.json", "sidecar");
  manifest.write(dir / "manifest.json");
  std::cout << sidecar.dump(2) << '\n';
}

void cmd_family(const std::string& name, const Config& c, bool execute) {
  const imp::Family f = imp::parse_family(name);
  if (!c.n) throw std::invalid_argument("family requires --n");
  const imp::Program p = imp::family_program(f, imp::BigInt(*c.n));
  json j = {{"family", imp::family_name(f)},
            {"n", *c.n},
            {"program", imp::render(p)},
            {"length", imp::program_length(p)},
            {"base_position", imp::rank_base(p).str()}};
  if (execute) {
    imp::RunOptions options;
    options.costs = parse_costs(c.costs);
    const imp::RunResult r = imp::run(p, c.budget, options);
    j["halted"] = r.halted;
    j["steps"] = r.steps;
    j["output"] = r.halted ? imp::output(r.store).str() : "";
  }
  if (c.format == "json") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << "family,n,length,halted,steps,output\n"
            << j["family"].get<std::string>() << ',' << *c.n << ',' << j["length"].get<std::size_t>() << ',';
  if (execute) {
    std::cout << (j["halted"].get<bool>() ? 1 : 0) << ',' << j["steps"].get<std::uint64_t>() << ','
              << j["output"].get<std::string>();
  } else {
    std::cout << ",,";
  }
  std::cout << '\n';
}

int cmd_audit(const std::string& manifest, std::uint64_t checks, std::uint64_t seed) {
  const imp::AuditReport r = imp::audit_manifest(manifest, checks, seed);
  for (const auto& m : r.hash_failures) std::cerr << "hash mismatch: " << m << '\n';
  for (const auto& m : r.replay_failures) std::cerr << "replay mismatch: " << m << '\n';
  std::cout << json({{"ok", r.ok()},
                     {"files_checked", r.files_checked},
                     {"records_replayed", r.records_replayed},
                     {"hash_failures", r.hash_failures.size()},
                     {"replay_failures", r.replay_failures.size()}})
                   .dump()
            << '\n';
  return r.ok() ? kOk : kAuditFailed;
}

int default_workers() {
  if (const char* env = std::getenv("IMP_SPACE_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return w;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid IMP_SPACE_WORKERS='" << env << "'\n";
  }
  return omp_get_max_threads();
}

Failure classify(const std::exception_ptr& ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const imp::SyntaxError& e) {
    return {kSyntax, "syntax", e.what()};
  } catch (const imp::IoError& e) {
    return {kIo, "io", e.what()};
  } catch (const imp::OutOfRange& e) {
    return {kRange, "range", e.what()};
  } catch (const std::out_of_range& e) {
    return {kRange, "range", e.what()};
  } catch (const std::domain_error& e) {
    return {kRange, "range", e.what()};
  } catch (const std::invalid_argument& e) {
    return {kUsage, "usage", e.what()};
  } catch (const json::exception& e) {
    return {kIo, "io", e.what()};
  } catch (const std::exception& e) {
    return {kInternal, "internal", e.what()};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Count, enumerate, run and explore IMP programs", "imp-space"};
  app.set_version_flag("--version", std::string(imp::kToolVersion));
  app.require_subcommand(1);

  Config c;
  c.workers = default_workers();

  auto add_costs = [&](CLI::App* sub) {
    sub->add_option("--costs", c.costs, "Step costs as statement,operator,leaf")->capture_default_str();
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", c.budget, "Step budget")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  };
  auto add_job = [&](CLI::App* sub) {
    sub->add_option("--max-length", c.max_length, "Largest program length")->capture_default_str();
    add_budget(sub);
    sub->add_option("--workers", c.workers, "Worker threads (default: IMP_SPACE_WORKERS)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out, "Output directory (files plus manifest.json)");
    sub->add_flag("--progress", c.progress, "Report progress on stderr");
    add_costs(sub);
    add_format(sub);
  };

  auto* count = app.add_subcommand("count", "Programs per length and accumulated");
  count->add_option("--max-length", c.max_length, "Largest length")->required();
  add_format(count);

  std::string position;
  bool base = false;
  bool canonical = false;
  std::optional<std::size_t> length;
  auto* unrank = app.add_subcommand("unrank", "Program at a position");
  unrank->add_option("position", position, "Decimal position")->required();
  auto* ub = unrank->add_flag("--base", base, "Base (Cantor pairing) enumeration");
  unrank->add_flag("--canonical", canonical, "Canonical enumeration (default)")->excludes(ub);
  unrank->add_option("--length", length, "Rank within programs of this length")->excludes(ub);

  std::string program_text;
  bool fixed = false;
  auto* rank = app.add_subcommand("rank", "Position of a program");
  rank->add_option("program", program_text, "Program text")->required();
  auto* rb = rank->add_flag("--base", base, "Base (Cantor pairing) enumeration");
  rank->add_flag("--canonical", canonical, "Canonical enumeration (default)")->excludes(rb);
  rank->add_flag("--fixed-length", fixed, "Rank among programs of the same length")->excludes(rb);

  bool no_loop_check = false;
  auto* run = app.add_subcommand("run", "Execute one program and print {halted, steps, output}");
  run->add_option("program", program_text, "Program text")->required();
  add_budget(run);
  add_costs(run);
  run->add_flag("--no-loop-check", no_loop_check, "Disable the repeated-state shortcut");

  auto* sample = app.add_subcommand("sample", "Uniform sample of halting programs and its runtime threshold");
  add_job(sample);
  sample->get_option("--max-length")->default_str("9");
  sample->add_option("--seed", c.seed, "Sampling seed")->capture_default_str();
  sample->add_option("--epsilon", c.epsilon, "Decision error")->capture_default_str();
  sample->add_option("--lambda", c.lambda, "Precision")->capture_default_str();
  sample->add_option("--delta", c.delta, "Confidence")->capture_default_str();
  sample->add_option("--n", c.n, "Halting programs to collect (default: from lambda and delta)");

  auto* sweep = app.add_subcommand("sweep", "Run every program up to a length");
  add_job(sweep);
  sweep->add_flag("--records", c.records, "Also write records.csv (needs --out)");

  auto* ctm = app.add_subcommand("ctm", "Shortest producers and output frequencies");
  add_job(ctm);

  std::string family_name;
  bool execute = false;
  auto* family = app.add_subcommand("family", "The 2^n, n!, n^n and n^(2^n) loop programs");
  family->add_option("name", family_name, "pows2, fact, expt or exptPows2")->required();
  family->add_option("--n", c.n, "Parameter")->required();
  family->add_flag("--run", execute, "Execute and report the output");
  add_budget(family);
  add_costs(family);
  add_format(family);

  std::string manifest;
  std::uint64_t checks = 100;
  auto* audit = app.add_subcommand("audit", "Verify manifest hashes and replay random rows");
  audit->add_option("manifest", manifest, "manifest.json")->required()->check(CLI::ExistingFile);
  audit->add_option("--checks", checks, "Rows to replay per file")->capture_default_str();
  audit->add_option("--seed", c.seed, "Spot-check seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*count) {
      cmd_count(c);
    } else if (*unrank) {
      cmd_unrank(position, base, length);
    } else if (*rank) {
      cmd_rank(program_text, base, fixed);
    } else if (*run) {
      cmd_run(program_text, c, no_loop_check);
    } else if (*sample) {
      if (sample->count("--max-length") == 0) c.max_length = 9;
      cmd_sample(c);
    } else if (*sweep) {
      if (c.records && c.out.empty()) throw std::invalid_argument("--records requires --out");
      cmd_sweep(c);
    } else if (*ctm) {
      cmd_ctm(c);
    } else if (*family) {
      cmd_family(family_name, c, execute);
    } else if (*audit) {
      return cmd_audit(manifest, checks, c.seed);
    }
  } catch (...) {
    const Failure f = classify(std::current_exception());
    std::cerr << "error[" << f.category << "]: " << f.message << '\n';
    return f.code;
  }
  return kOk;
}
