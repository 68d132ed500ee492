// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "pmp/fixture.hpp"

namespace pmp::cli {

namespace {

namespace fs = std::filesystem;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || p != v.data() + v.size())
    throw ConfigError("config: " + std::string(key) + " expects an unsigned integer, got '" + std::string(v) + "'");
  return out;
}

std::uint32_t parse_u32(std::string_view key, std::string_view v) {
  const auto out = parse_u64(key, v);
  if (out > UINT32_MAX) throw ConfigError("config: " + std::string(key) + " out of range");
  return static_cast<std::uint32_t>(out);
}

double parse_churn(std::string_view v) {
  double out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || p != v.data() + v.size())
    throw ConfigError("config: churn expects numbers, got '" + std::string(v) + "'");
  if (!(out >= 0.0 && out < 1.0)) throw ConfigError("config: churn values must lie in [0, 1)");
  return out;
}

void validate(const AblationConfig& c) {
  const auto& e = c.experiment;
  try {
    e.dims.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("config: ") + ex.what());
  }
  if (e.layout.g == 0 || e.dims.extended_cols() % e.layout.g != 0)
    throw ConfigError("config: g must divide the extended column count");
  if (e.layout.rows_per_group == 0) throw ConfigError("config: rows_per_group must be positive");
  if (e.srs_degree < e.dims.cols - 1 || e.srs_degree < e.layout.g)
    throw ConfigError("config: srs_degree must cover cols - 1 and g");
  if (e.peers == 0 || e.replication == 0 || e.replication > e.peers)
    throw ConfigError("config: need 0 < replication <= peers");
  if (e.retrieval.retry_budget == 0) throw ConfigError("config: retry_budget must be positive");
  if (e.retrieval.bytes_per_tick == 0) throw ConfigError("config: bytes_per_tick must be positive");
  if (c.seeds == 0) throw ConfigError("config: seeds must be positive");
  if (c.churn.empty() || c.modes.empty()) throw ConfigError("config: churn and modes must be non-empty");
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, std::string_view text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
  if (!f) throw ConfigError("cannot write " + p.string());
}

std::size_t mode_rank(ConfigMode m) {
  return static_cast<std::size_t>(std::find(std::begin(kAllModes), std::end(kAllModes), m) - std::begin(kAllModes));
}

const char* kConfigHelp = R"(Config file keys (key=value, '#' comments):
  rows=4 cols=8 extension=2 g=4 rows_per_group=1 srs_degree=16
  data_seed=1 srs_seed=7 peers=50 replication=5 alpha=3 bucket_size=20
  light_clients=8 samples=16 retry_budget=3 window_ticks=600 rtt_ticks=20
  bytes_per_tick=64 timeout_ticks=100
  seed=1 seeds=1 churn=0.0 modes=vanilla,batched,grouped,pmp
PMP_SEED in the environment overrides seed; --seed overrides both.)";

// --- subcommands -----------------------------------------------------------

int cmd_storage_report(std::uint64_t entries, std::uint64_t group, const std::string& format, std::ostream& out,
                       std::ostream& err) {
  wire::StorageReport r;
  try {
    r = wire::storage_report(entries, group);
  } catch (const std::invalid_argument& e) {
    err << "storage-report: " << e.what() << "\n";
    return kExitUsage;
  }
  const std::vector<std::pair<std::string, std::uint64_t>> kv = {
      {"entries", r.entries},
      {"group", r.group_size},
      {"baseline_cell_bytes", r.baseline_cell_bytes},
      {"baseline_total_bytes", r.baseline_total_bytes},
      {"grouped_object_bytes", r.grouped_object_bytes},
      {"grouped_object_count", r.grouped_object_count},
      {"grouped_total_bytes", r.grouped_total_bytes},
      {"amortized_numerator", r.amortized_numerator},
      {"amortized_denominator", r.amortized_denominator},
      {"mcell_wire_object_bytes", r.mcell_wire_object_bytes},
      {"mcell_wire_total_bytes", r.mcell_wire_total_bytes},
  };
  if (format == "json") {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : kv) j[k] = v;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  for (std::size_t i = 0; i < kv.size(); ++i) out << (i ? "," : "") << kv[i].first;
  out << "\n";
  for (std::size_t i = 0; i < kv.size(); ++i) out << (i ? "," : "") << kv[i].second;
  out << "\n";
  return kExitOk;
}

int cmd_ablation(const std::string& config_path, const std::string& format, const std::string& out_path,
                 const std::optional<std::uint64_t>& seed, unsigned jobs, std::ostream& out) {
  auto config = load_config(config_path);
  if (const char* env = std::getenv("PMP_SEED")) config.seed = parse_u64("PMP_SEED", env);
  if (seed) config.seed = *seed;
  const auto rows = run_ablation(config, jobs);
  const auto text = format == "json" ? format_json(rows) : format_csv(rows);
  if (out_path.empty())
    out << text;
  else
    write_text(out_path, text);
  return kExitOk;
}

int cmd_gen_fixture(const std::string& config_path, const fs::path& dir, std::ostream& out) {
  const auto config = config_path.empty() ? AblationConfig{} : load_config(config_path);
  const auto block = make_block(config.experiment);
  fs::create_directories(dir);
  fixture::write_file(dir / "srs.pmpd", fixture::encode_srs(block.srs));
  fixture::write_file(dir / "grid.pmpd", fixture::encode_grid(block.grid));
  fixture::write_file(dir / "header.pmpd", fixture::encode_header(block.header));
  out << "block " << to_hex(block.header.block_id) << "\n";
  return kExitOk;
}

Layout checked_layout(std::uint32_t g, std::uint32_t rows_per_group, const GridDims& dims) {
  if (g == 0 || dims.extended_cols() % g != 0) throw ConfigError("g must divide the extended column count");
  if (rows_per_group == 0) throw ConfigError("rows-per-group must be positive");
  return {g, rows_per_group};
}

int cmd_prove(const fs::path& dir, std::uint32_t g, std::uint32_t rows_per_group, fs::path out_path,
              std::ostream& out, std::ostream& err) {
  const auto srs = fixture::decode_srs(fixture::read_file(dir / "srs.pmpd"));
  const auto grid = fixture::decode_grid(fixture::read_file(dir / "grid.pmpd"), srs);
  const auto header = fixture::decode_header(fixture::read_file(dir / "header.pmpd"));
  if (header.row_commitments != grid.row_commitments) {
    err << "prove: header commitments do not match the grid\n";
    return kExitUsage;
  }
  const auto layout = checked_layout(g, rows_per_group, grid.dims);
  fixture::MCellSet set{layout, {}};
  for (auto& obj : build_objects(srs, grid, header.block_id, layout, ConfigMode::PMP))
    set.records.push_back(std::move(obj.bytes));
  if (out_path.empty()) out_path = dir / "mcells.pmpd";
  fixture::write_file(out_path, fixture::encode_mcells(set));
  out << "wrote " << set.records.size() << " mcells to " << out_path.string() << "\n";
  return kExitOk;
}

std::string group_name(const GroupId& id) {
  return "group (band " + std::to_string(id.band) + ", micro " + std::to_string(id.micro) + ")";
}

int cmd_verify(const fs::path& dir, fs::path header_path, fs::path mcells_path, std::ostream& out,
               std::ostream& err) {
  if (header_path.empty()) header_path = dir / "header.pmpd";
  if (mcells_path.empty()) mcells_path = dir / "mcells.pmpd";
  const auto srs = fixture::decode_srs(fixture::read_file(dir / "srs.pmpd"));
  const auto header = fixture::decode_header(fixture::read_file(header_path));
  const auto set = fixture::decode_mcells(fixture::read_file(mcells_path));
  const auto& dims = header.dims;
  const auto layout = checked_layout(set.layout.g, set.layout.rows_per_group, dims);
  if (header.row_commitments.size() != dims.rows) {
    err << "verify: header carries " << header.row_commitments.size() << " commitments for " << dims.rows
        << " rows\n";
    return kExitUsage;
  }

  const std::uint32_t bands = (dims.rows + layout.rows_per_group - 1) / layout.rows_per_group;
  const std::uint32_t micros = dims.extended_cols() / layout.g;
  std::set<GroupId> seen;
  for (std::size_t i = 0; i < set.records.size(); ++i) {
    const auto& rec = set.records[i];
    std::optional<GroupId> id;
    try {
      if (rec.size() >= wire::kProofSize + wire::kBlockSize) {
        const auto block = wire::decode_block(std::span(rec).subspan(wire::kProofSize, wire::kBlockSize));
        if (block.rows_start % layout.rows_per_group == 0 && block.cols_start % layout.g == 0)
          id = GroupId{block.rows_start / layout.rows_per_group, block.cols_start / layout.g};
      }
    } catch (const wire::DecodeError&) {
    }
    if (!id || id->band >= bands || id->micro >= micros) {
      err << "FAIL record " << i << ": block does not name a group of this grid\n";
      return kExitVerifyFailed;
    }
    if (!seen.insert(*id).second) {
      err << "FAIL " << group_name(*id) << ": duplicate record " << i << "\n";
      return kExitVerifyFailed;
    }
    bool ok = false;
    try {
      ok = verify_mcell_bytes(srs, header, layout, *id, rec);
    } catch (const wire::DecodeError& e) {
      err << "FAIL " << group_name(*id) << ": " << e.what() << "\n";
      return kExitVerifyFailed;
    } catch (const EncodingError& e) {
      err << "FAIL " << group_name(*id) << ": " << e.what() << "\n";
      return kExitVerifyFailed;
    }
    if (!ok) {
      err << "FAIL " << group_name(*id) << ": proof rejected\n";
      return kExitVerifyFailed;
    }
  }
  for (std::uint32_t b = 0; b < bands; ++b)
    for (std::uint32_t m = 0; m < micros; ++m)
      if (!seen.count({b, m})) {
        err << "FAIL " << group_name({b, m}) << ": missing\n";
        return kExitVerifyFailed;
      }
  out << "ok: " << seen.size() << " groups verified\n";
  return kExitOk;
}

}  // namespace

AblationConfig parse_config(std::string_view text) {
  AblationConfig c;
  auto& e = c.experiment;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    const auto key = trim(line.substr(0, eq));
    const auto val = trim(line.substr(eq + 1));
    if (!seen.emplace(key).second) throw ConfigError("config: duplicate key " + std::string(key));

    const std::map<std::string_view, std::uint32_t*> u32_keys = {
        {"rows", &e.dims.rows},
        {"cols", &e.dims.cols},
        {"extension", &e.dims.extension_factor},
        {"g", &e.layout.g},
        {"rows_per_group", &e.layout.rows_per_group},
        {"srs_degree", &e.srs_degree},
        {"peers", &e.peers},
        {"replication", &e.replication},
        {"light_clients", &e.light_clients},
        {"samples", &e.samples},
        {"retry_budget", &e.retrieval.retry_budget},
        {"alpha", &e.kademlia_alpha},
        {"bucket_size", &e.kademlia_bucket},
        {"seeds", &c.seeds},
    };
    const std::map<std::string_view, std::uint64_t*> u64_keys = {
        {"data_seed", &e.data_seed},
        {"srs_seed", &e.srs_seed},
        {"window_ticks", &e.retrieval.window_ticks},
        {"rtt_ticks", &e.retrieval.rtt_ticks},
        {"bytes_per_tick", &e.retrieval.bytes_per_tick},
        {"timeout_ticks", &e.retrieval.timeout_ticks},
        {"seed", &c.seed},
    };
    if (auto it = u32_keys.find(key); it != u32_keys.end()) {
      *it->second = parse_u32(key, val);
    } else if (auto it64 = u64_keys.find(key); it64 != u64_keys.end()) {
      *it64->second = parse_u64(key, val);
    } else if (key == "churn") {
      c.churn.clear();
      for (auto v : split_list(val)) c.churn.push_back(parse_churn(v));
      std::set<double> uniq(c.churn.begin(), c.churn.end());
      if (uniq.size() != c.churn.size()) throw ConfigError("config: repeated churn value");
    } else if (key == "modes") {
      c.modes.clear();
      for (auto v : split_list(val)) {
        const auto m = parse_mode(v);
        if (!m) throw ConfigError("config: unknown mode '" + std::string(v) + "'");
        if (std::find(c.modes.begin(), c.modes.end(), *m) != c.modes.end())
          throw ConfigError("config: repeated mode " + std::string(v));
        c.modes.push_back(*m);
      }
    } else {
      throw ConfigError("config: unknown key " + std::string(key));
    }
  }
  validate(c);
  return c;
}

AblationConfig load_config(const std::filesystem::path& path) { return parse_config(read_text(path)); }

std::vector<MetricsRecord> run_ablation(const AblationConfig& config, unsigned jobs) {
  validate(config);
  const auto ctx = make_context(config.experiment);

  struct Task {
    ConfigMode mode;
    double churn;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (auto m : config.modes)
    for (double ch : config.churn)
      for (std::uint32_t s = 0; s < config.seeds; ++s) tasks.push_back({m, ch, config.seed + s});

  std::vector<MetricsRecord> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) rows[i] = run_experiment(ctx, tasks[i].mode, tasks[i].churn, tasks[i].seed);
  };
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::sort(rows.begin(), rows.end(), [](const MetricsRecord& a, const MetricsRecord& b) {
    return std::tuple(mode_rank(a.mode), a.churn, a.seed) < std::tuple(mode_rank(b.mode), b.churn, b.seed);
  });
  return rows;
}

std::string format_csv(const std::vector<MetricsRecord>& rows) {
  std::string s;
  const auto header = MetricsRecord{}.to_kv();
  for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i].first;
  s += "\n";
  for (const auto& r : rows) {
    const auto kv = r.to_kv();
    for (std::size_t i = 0; i < kv.size(); ++i) s += (i ? "," : "") + kv[i].second;
    s += "\n";
  }
  return s;
}

std::string format_json(const std::vector<MetricsRecord>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json obj;
    for (const auto& [k, v] : r.to_kv()) {
      if (k == "mode")
        obj[k] = v;
      else
        obj[k] = nlohmann::ordered_json::parse(v);
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grouped KZG multiproofs for data availability sampling", "pmp"};
  app.require_subcommand(1);

  std::uint64_t entries = 0, group = 0;
  std::string format = "csv";
  auto* storage = app.add_subcommand("storage-report", "Byte accounting for baseline and grouped storage");
  storage->add_option("--entries", entries, "Number of cells")->required();
  storage->add_option("--group", group, "Cells per grouped object")->required();
  storage->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  auto* ablation = app.add_subcommand("ablation", "Run every (mode, churn, seed) of a config");
  ablation->add_option("config", config_path, "key=value config file")->required()->check(CLI::ExistingFile);
  ablation->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  ablation->add_option("--out", out_path, "Output file (default stdout)");
  ablation->add_option("--seed", seed, "Base seed, overrides config and PMP_SEED");
  ablation->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
  ablation->footer(kConfigHelp);

  std::string dir;
  std::string fixture_config;
  auto* gen = app.add_subcommand("gen-fixture", "Write srs.pmpd, grid.pmpd and header.pmpd");
  gen->add_option("--config", fixture_config, "Config file for grid and SRS parameters")->check(CLI::ExistingFile);
  gen->add_option("--dir", dir, "Fixture directory")->required();
  gen->footer(kConfigHelp);

  std::uint32_t g = 4, rows_per_group = 1;
  std::string prove_out;
  auto* prove = app.add_subcommand("prove", "Write one MCell per group of a grid fixture");
  prove->add_option("--dir", dir, "Fixture directory")->required()->check(CLI::ExistingDirectory);
  prove->add_option("--g", g, "Micro-domain size")->capture_default_str();
  prove->add_option("--rows-per-group", rows_per_group, "Rows per band")->capture_default_str();
  prove->add_option("--out", prove_out, "MCell file (default <dir>/mcells.pmpd)");

  std::string header_path, mcells_path;
  auto* verify = app.add_subcommand("verify", "Check every MCell against the header commitments");
  verify->add_option("--dir", dir, "Fixture directory")->required()->check(CLI::ExistingDirectory);
  verify->add_option("--header", header_path, "Header file (default <dir>/header.pmpd)");
  verify->add_option("--mcells", mcells_path, "MCell file (default <dir>/mcells.pmpd)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*storage) return cmd_storage_report(entries, group, format, out, err);
    if (*ablation) return cmd_ablation(config_path, format, out_path, seed, jobs, out);
    if (*gen) return cmd_gen_fixture(fixture_config, dir, out);
    if (*prove) return cmd_prove(dir, g, rows_per_group, prove_out, out, err);
    if (*verify) return cmd_verify(dir, header_path, mcells_path, out, err);
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
  } catch (const wire::DecodeError& e) {
    err << "fixture: " << e.what() << "\n";
  } catch (const EncodingError& e) {
    err << "fixture: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << e.what() << "\n";
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"pmp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pmp::cli
