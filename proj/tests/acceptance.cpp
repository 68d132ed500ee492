// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "pmp/dasnet.hpp"
#include "pmp/multiproof.hpp"
#include "pmp/transcript.hpp"
#include "pmp/wire.hpp"
#include "support/oracle.hpp"

using namespace pmp;
using pmp::testing::KnownSecret;

namespace {

struct Check {
  bool ok = true;
  std::string first_failure;
  std::string note;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
};

struct OpenedInstance {
  std::vector<Polynomial> polys;
  OpenedGroup group;
};

OpenedInstance make_instance(const SRS& srs, const EvaluationDomain& dom, std::size_t k, std::size_t g,
                             std::size_t offset, std::size_t deg, std::mt19937_64& rng) {
  OpenedInstance inst{{}, {{}, {}, MicroDomain(dom, offset, g)}};
  for (std::size_t i = 0; i < k; ++i) {
    inst.polys.push_back(Polynomial::random(deg, rng));
    inst.group.commitments.push_back(commit(srs, inst.polys.back()));
    std::vector<Scalar> row;
    for (const auto& z : inst.group.micro_domain.points()) row.push_back(inst.polys.back()(z));
    inst.group.values.push_back(std::move(row));
  }
  return inst;
}

Scalar nonzero(std::mt19937_64& rng) {
  Scalar s;
  while (s == Scalar::zero()) s = Scalar::random(rng);
  return s;
}

std::string counters(const OpCounters& o) {
  std::ostringstream s;
  s << "{" << o.g1_scalar_mults << "," << o.g2_scalar_mults << "," << o.pairings << "," << o.interpolations << "}";
  return s.str();
}

// 1
Check storage_arithmetic() {
  Check c;
  const auto r4 = wire::storage_report(64, 4);
  c.expect(r4.baseline_total_bytes == 5120, "baseline total != 5120");
  c.expect(r4.grouped_object_bytes == 176, "grouped object != 176");
  c.expect(r4.amortized_is_integer() && r4.amortized_numerator == 44, "amortized != 44");
  c.expect(r4.grouped_total_bytes == 2816, "grouped total != 2816");
  c.expect(r4.grouped_object_count == 16, "object count != 16");
  c.expect(wire::storage_report(64, 1).baseline_total_bytes == 5120, "g=1 baseline != 5120");
  c.expect(wire::storage_report(64, 1).grouped_total_bytes == 5120, "g=1 grouped != 5120");
  return c;
}

// 2
Check multiproof_correctness() {
  Check c;
  std::mt19937_64 rng(0xa2);
  const auto ks = KnownSecret::make(64, rng);
  const std::size_t kk[] = {1, 2, 4, 8};
  const std::size_t gg[] = {1, 4, 8, 16};
  int n = 0;
  for (int t = 0; t < 112; ++t) {
    const std::size_t k = kk[t % 4], g = gg[(t / 4) % 4];
    const std::size_t d = g + rng() % (65 - g);
    const auto dom = EvaluationDomain::for_size(2 * g);
    auto inst = make_instance(ks.srs, dom, k, g, g * (rng() % 2), d, rng);
    const Scalar gamma = Scalar::random(rng);
    const auto proof = open_shared(ks.srs, inst.polys, inst.group.micro_domain, gamma);
    const std::string tag = " (k=" + std::to_string(k) + " g=" + std::to_string(g) + " d=" + std::to_string(d) + ")";
    c.expect(verify_shared(ks.srs, inst.group, proof, gamma), "honest proof rejected" + tag);
    const std::vector<EvaluationDomain> sets(k, inst.group.micro_domain.domain());
    c.expect(proof == open_generic(ks.srs, inst.polys, sets, inst.group.values, gamma),
             "differs from generic opening" + tag);
    const auto pts = inst.group.micro_domain.points();
    const std::vector<std::vector<Scalar>> oracle_sets(k, std::vector<Scalar>(pts.begin(), pts.end()));
    c.expect(proof.witness == ks.generic_witness(inst.polys, oracle_sets, gamma), "differs from oracle" + tag);
    ++n;
  }
  c.note = std::to_string(n) + " instances";
  return c;
}

// 3
Check soundness_tamper() {
  Check c;
  std::mt19937_64 rng(0xa3);
  const auto srs = SRS::generate(16, Scalar::random(rng));
  const auto dom = EvaluationDomain::for_size(8);

  struct Honest {
    OpenedInstance inst;
    wire::GCellBlock block;
    AggregatedProof proof;
  };
  std::vector<Honest> pool;
  for (int i = 0; i < 24; ++i) {
    const std::size_t k = 2 + i % 3;
    const std::uint32_t off = 4 * (i % 2);
    auto inst = make_instance(srs, dom, k, 4, off, 4 + rng() % 12, rng);
    const wire::GCellBlock block{0, static_cast<std::uint32_t>(k), off, off + 4};
    const auto proof = open_group(srs, inst.polys, inst.group.commitments, inst.group.micro_domain, block);
    c.expect(verify_group(srs, inst.group, block, proof), "honest group rejected");
    pool.push_back({std::move(inst), block, proof});
  }

  const char* kinds[] = {"scalar", "proof byte", "commitment order", "block field", "transcript component"};
  std::map<std::string, int> trials;
  int false_accepts = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto& h = pool[rng() % pool.size()];
    const int kind = t % 5;
    auto group = h.inst.group;
    auto block = h.block;
    bool accepted = false;
    switch (kind) {
      case 0: {
        group.values[rng() % group.values.size()][rng() % 4] += nonzero(rng);
        accepted = verify_group(srs, group, block, h.proof);
        break;
      }
      case 1: {
        auto bytes = h.proof.to_bytes();
        bytes[rng() % bytes.size()] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
        try {
          accepted = verify_group(srs, group, block, AggregatedProof::from_bytes(bytes));
        } catch (const EncodingError&) {
          accepted = false;
        }
        break;
      }
      case 2: {
        const std::size_t i = rng() % group.commitments.size();
        const std::size_t j = (i + 1 + rng() % (group.commitments.size() - 1)) % group.commitments.size();
        std::swap(group.commitments[i], group.commitments[j]);
        // alternate between a reordered header alone and a consistently reordered object
        if (t % 2) std::swap(group.values[i], group.values[j]);
        accepted = verify_group(srs, group, block, h.proof);
        break;
      }
      case 3: {
        // tamper with the encoded block the way it arrives on the wire
        auto enc = wire::encode_block(block);
        const std::size_t field = rng() % 4;
        enc[4 * field + rng() % 2] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
        try {
          accepted = verify_group(srs, group, wire::decode_block(enc), h.proof);
        } catch (const wire::DecodeError&) {
          accepted = false;
        }
        break;
      }
      default: {
        auto tr = group_transcript(srs, group.commitments, group.micro_domain, block);
        switch (rng() % 6) {
          case 0: tr.srs_id[rng() % 32] ^= 0x01; break;
          case 1: tr.commitments[rng() % tr.commitments.size()] = commit(srs, Polynomial::random(3, rng)).to_bytes(); break;
          case 2: tr.micro_domain[rng() % 4] += Scalar::one(); break;
          case 3: tr.coords[rng() % tr.coords.size()].col += 8; break;
          case 4: tr.coords.pop_back(); break;
          default: tr.block.cols_end += 4; break;
        }
        accepted = verify_shared(srs, group, h.proof, derive_gamma(tr));
        break;
      }
    }
    ++trials[kinds[kind]];
    if (accepted) {
      ++false_accepts;
      c.expect(false, std::string("false accept: ") + kinds[kind] + " trial " + std::to_string(t));
    }
  }
  c.note = "1000 trials, " + std::to_string(false_accepts) + " false accepts";
  for (const auto& [k, n] : trials) c.expect(n >= 200, std::string("too few trials for ") + k);
  return c;
}

// 4
Check reduction_identity() {
  Check c;
  std::mt19937_64 rng(0xa4);
  const auto srs = SRS::generate(16, Scalar::random(rng));
  const auto dom = EvaluationDomain::for_size(16);
  int agree = 0, accepted = 0;
  for (int t = 0; t < 200; ++t) {
    const auto p = Polynomial::random(1 + rng() % 16, rng);
    const MicroDomain md(dom, rng() % 16, 1);
    const Scalar z = md.points()[0];
    const auto cm = commit(srs, p);
    auto [v, pi] = open_single(srs, p, z);
    switch (t % 4) {
      case 1: v += nonzero(rng); break;
      case 2: pi.witness += G1::generator() * nonzero(rng); break;
      case 3: {
        const OpenedGroup wrong{{commit(srs, Polynomial::random(4, rng))}, {{v}}, md};
        const bool a = verify_shared(srs, wrong, AggregatedProof{pi.witness}, Scalar::random(rng));
        const bool b = verify_single(srs, wrong.commitments[0], z, v, pi);
        agree += a == b;
        accepted += a;
        continue;
      }
      default: break;
    }
    const OpenedGroup group{{cm}, {{v}}, md};
    const bool a = verify_shared(srs, group, AggregatedProof{pi.witness}, Scalar::random(rng));
    const bool b = verify_single(srs, cm, z, v, pi);
    c.expect(a == b, "decision mismatch at trial " + std::to_string(t));
    c.expect(a == (t % 4 == 0), "unexpected decision at trial " + std::to_string(t));
    agree += a == b;
    accepted += a;
  }
  c.expect(agree == 200, "decisions differ");
  c.note = std::to_string(agree) + "/200 agree, " + std::to_string(accepted) + " honest accepted";
  return c;
}

// 5
Check operation_accounting() {
  Check c;
  std::mt19937_64 rng(0xa5);
  for (std::size_t d : {16u, 32u, 64u}) {
    const auto srs = SRS::generate(d, Scalar::random(rng));
    for (std::size_t k : {1u, 2u, 4u, 8u}) {
      for (std::size_t g : {1u, 2u, 4u, 8u, 16u}) {
        const auto dom = EvaluationDomain::for_size(2 * g);
        const auto inst = make_instance(srs, dom, k, g, 0, d, rng);
        const Scalar gamma = Scalar::random(rng);
        const std::string tag = " (d=" + std::to_string(d) + " k=" + std::to_string(k) + " g=" + std::to_string(g) + ")";
        OpCounters open_ops;
        const auto proof = open_shared(srs, inst.polys, inst.group.micro_domain, gamma, &open_ops);
        c.expect(open_ops == OpCounters{d + 1 - g, 0, 0, 0}, "open " + counters(open_ops) + tag);
        srs.clear_cache();
        OpCounters cold, warm;
        c.expect(verify_shared(srs, inst.group, proof, gamma, &cold), "rejected" + tag);
        c.expect(cold == OpCounters{k + g + 1, g + 1, 2, 1}, "cold " + counters(cold) + tag);
        verify_shared(srs, inst.group, proof, gamma, &warm);
        c.expect(warm == OpCounters{k + g + 1, 0, 2, 1}, "warm " + counters(warm) + tag);
      }
    }
  }
  c.note = "G2 cost g+1 cold, 0 warm";
  return c;
}

// 6
Check worked_example() {
  Check c;
  std::mt19937_64 rng(0xa6);
  const auto srs = SRS::generate(8, Scalar::random(rng));
  const GridDims dims{2, 4, 2};
  std::vector<std::uint8_t> data(dims.capacity_bytes());
  for (auto& b : data) b = static_cast<std::uint8_t>(rng());
  const auto grid = build_grid(srs, data, dims);
  const auto parts = partition_micro_domains(grid.row_domain, 4);
  c.expect(grid.row_domain.size() == 8, "row domain is not 8 columns");
  c.expect(parts.size() == 2, "expected 2 micro-domains");
  for (std::uint32_t j = 0; j < parts.size(); ++j) {
    const auto group = build_opened_group(grid, {0, 2}, parts[j]);
    std::size_t scalars = 0;
    for (const auto& row : group.values) {
      c.expect(row.size() == 4, "value row is not a full 4-vector");
      scalars += row.size();
    }
    c.expect(group.values.size() == 2 && scalars == 8, "group does not carry 8 scalars");
    const auto block = group_block({0, j}, dims, 4, 2);
    const auto proof = open_group(srs, grid.row_polys, group.commitments, parts[j], block);
    c.expect(verify_group(srs, group, block, proof), "prove/verify failed");
  }
  return c;
}

// 7
Check wire_exactness() {
  Check c;
  std::mt19937_64 rng(0xa7);
  for (int i = 0; i < 10000; ++i) {
    wire::MCell m;
    for (auto& b : m.proof) b = static_cast<std::uint8_t>(rng());
    const auto rs = static_cast<std::uint32_t>(rng() % 4096), cs = static_cast<std::uint32_t>(rng() % 4096);
    m.block = {rs, rs + 1 + static_cast<std::uint32_t>(rng() % 4), cs, cs + 1 + static_cast<std::uint32_t>(rng() % 16)};
    for (std::uint64_t j = 0; j < m.block.cell_count(); ++j) m.scalars.push_back(Scalar::random(rng).to_bytes());
    const auto bytes = wire::encode_mcell(m);
    c.expect(bytes.size() == 48 + 16 + 4 + 32 * m.scalars.size(), "MCell size formula");
    const auto back = wire::decode_mcell(bytes);
    c.expect(back == m && wire::encode_mcell(back) == bytes, "MCell round trip");

    wire::BaselineCell b;
    for (auto& x : b.proof) x = static_cast<std::uint8_t>(rng());
    b.data = Scalar::random(rng).to_bytes();
    const auto bb = wire::encode_baseline(b);
    c.expect(bb.size() == 80, "BaselineCell is not 80 bytes");
    c.expect(wire::decode_baseline(bb) == b && wire::encode_baseline(wire::decode_baseline(bb)) == bb,
             "BaselineCell round trip");
  }
  c.note = "10000 cases each";
  return c;
}

// 8
Check soundness_accounting() {
  Check c;
  for (std::uint64_t s = 0; s <= 256; ++s)
    for (std::uint64_t g = 1; g <= 32; ++g)
      c.expect(effective_samples(s, g) == s / g, "effective_samples(" + std::to_string(s) + "," + std::to_string(g) + ")");
  const GridDims dims{64, 32, 2};
  for (std::uint64_t target = 0; target <= 64; ++target)
    for (std::uint64_t g = 1; g <= 32; ++g) {
      const auto budget = required_samples(target, g);
      const auto plan = make_plan(dims, static_cast<std::uint32_t>(budget.coordinate_samples), target * 131 + g);
      c.expect(plan.coordinates.size() == budget.coordinate_samples, "plan size");
      c.expect(effective_samples(plan.coordinates.size(), g) >= target,
               "plan short of target " + std::to_string(target) + " at g=" + std::to_string(g));
    }
  return c;
}

// 9
Check network_trends() {
  Check c;
  ExperimentConfig cfg;  // 4x8 grid extended to 64 cells, 50 peers, replication 5
  c.expect(cfg.dims.extended_cells() == 64 && cfg.peers == 50 && cfg.replication == 5, "config drifted");
  const auto ctx = make_context(cfg);
  const double churns[] = {0.0, 0.1, 0.2, 0.3};
  constexpr std::uint64_t kSeeds = 50;
  std::map<std::pair<ConfigMode, double>, double> mean;
  std::map<double, int> batched_mismatch;
  for (double churn : churns) {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
      std::map<ConfigMode, MetricsRecord> r;
      for (auto m : kAllModes) {
        r[m] = run_experiment(ctx, m, churn, seed);
        mean[{m, churn}] += r[m].hit_rate / kSeeds;
      }
      const auto& v = r[ConfigMode::Vanilla];
      const auto& b = r[ConfigMode::BatchedSingle];
      if (v.hit_rate != b.hit_rate || v.hits != b.hits) ++batched_mismatch[churn];
    }
  }
  std::ostringstream note;
  note.setf(std::ios::fixed);
  note.precision(4);
  for (double churn : {0.1, 0.2, 0.3}) {
    const double p = mean[{ConfigMode::PMP, churn}], g = mean[{ConfigMode::GroupedOnly, churn}],
                 v = mean[{ConfigMode::Vanilla, churn}];
    c.expect(p >= g && g >= v, "ordering violated at churn " + std::to_string(churn));
    note << " churn " << std::setprecision(1) << churn << std::setprecision(4) << ": pmp " << p << " grouped " << g << " vanilla " << v << ";";
  }
  for (double churn : churns) c.expect(batched_mismatch[churn] == 0, "batched differs from vanilla at churn " + std::to_string(churn));
  for (auto m : kAllModes)
    for (std::size_t i = 1; i < std::size(churns); ++i)
      c.expect(mean[{m, churns[i]}] <= mean[{m, churns[i - 1]}],
               std::string("not monotone in churn for ") + std::string(mode_name(m)));
  c.note = std::to_string(kSeeds) + " seeds;" + note.str();
  return c;
}

// 10
Check ablation_determinism() {
  Check c;
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "pmp_acceptance";
  fs::create_directories(dir);
  const auto cfg = dir / "ablation.cfg";
  std::ofstream(cfg) << "# determinism run\nseeds=3\nchurn=0,0.2\nlight_clients=4\nsamples=8\n";
  auto run_to = [&](const fs::path& out, const char* jobs) {
    std::ostringstream o, e;
    const int rc = cli::run({"ablation", cfg.string(), "--out", out.string(), "--jobs", jobs}, o, e);
    c.expect(rc == 0, "ablation exit " + std::to_string(rc) + ": " + e.str());
    std::ifstream in(out, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const auto a = run_to(dir / "a.csv", "1");
  const auto b = run_to(dir / "b.csv", "1");
  const auto p = run_to(dir / "p.csv", "4");
  c.expect(!a.empty(), "empty output");
  c.expect(a == b, "two invocations differ");
  c.expect(a == p, "parallel invocation differs");
  c.note = std::to_string(a.size()) + " bytes";
  fs::remove_all(dir);
  return c;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0: no stated limit
  std::function<Check()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "storage arithmetic", 1, storage_arithmetic},
      {2, "multiproof correctness", 60, multiproof_correctness},
      {3, "soundness under tampering", 120, soundness_tamper},
      {4, "reduction to single-point KZG", 0, reduction_identity},
      {5, "operation accounting", 0, operation_accounting},
      {6, "worked example", 0, worked_example},
      {7, "wire byte-exactness", 0, wire_exactness},
      {8, "soundness accounting", 0, soundness_accounting},
      {9, "network trends", 300, network_trends},
      {10, "end-to-end determinism", 0, ablation_determinism},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.limit_s > 0 && secs >= cr.limit_s) c.expect(false, "over time limit");
    failed += !c.ok;
    std::printf("[%s] %2d %-32s %8.2fs", c.ok ? "PASS" : "FAIL", cr.id, cr.name, secs);
    if (cr.limit_s > 0) std::printf(" (limit %.0fs)", cr.limit_s);
    if (!c.note.empty()) std::printf("  %s", c.note.c_str());
    if (!c.ok) std::printf("  -- %s", c.first_failure.c_str());
    std::printf("\n");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
