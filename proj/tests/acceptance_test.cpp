// Acceptance suite: one PASS/FAIL line per criterion, exact comparisons,
// wall-clock limits where stated. Usage: acceptance_test <path-to-grasec>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "grasec/criteria.hpp"
#include "grasec/grassec.hpp"
#include "grasec/phimap.hpp"
#include "grasec/reproduce.hpp"
#include "grasec/secant.hpp"
#include "grasec/serialize.hpp"

using namespace grasec;

namespace {

SegreVeroneseSpec spec(const std::string& s) { return SegreVeroneseSpec::parse(s); }

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [" << what << "]";
    }
  }
  template <class A, class B>
  void expect_eq(const A& a, const B& b, const std::string& what) {
    if (!(a == b)) {
      ok = false;
      detail << " [" << what << ": got " << a << ", want " << b << "]";
    }
  }
};

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

void criterion_1(Outcome& o) {
  const auto x = spec("1,1,1,1,1");
  const auto six = secant_dim(x, 6);
  const auto five = secant_dim(x, 5);
  o.expect_eq(six.dim, 31u, "sigma_6 dim");
  o.expect(six.fills_ambient, "sigma_6 fills P^31");
  o.expect_eq(five.dim, 29u, "sigma_5 dim");
  o.expect_eq(generic_rank(x), 6u, "generic rank");
}

void criterion_2(Outcome& o) {
  const auto x = spec("3,3,3");
  const auto seven = secant_dim(x, 7);
  o.expect_eq(seven.dim, 63u, "sigma_7 dim");
  o.expect(seven.fills_ambient, "sigma_7 fills P^63");
  o.expect_eq(secant_dim(x, 6).dim, 59u, "sigma_6 dim");
  o.expect_eq(generic_rank(x), 7u, "generic rank");
}

void criterion_3(Outcome& o) {
  for (const auto& g : slice_map_grid()) {
    const auto x = spec(g.x);
    const auto direct = gs_dim_direct(x, g.k, g.s);
    const auto via_phi = gs_dim_phi(x, g.k, g.s);
    const auto sec = secant_dim(segre_with_projective(x, static_cast<unsigned>(g.k)), g.s).dim;
    const std::string tag = g.x + " k=" + std::to_string(g.k) + " s=" + std::to_string(g.s);
    o.expect_eq(direct, via_phi, "direct vs slice map " + tag);
    const std::size_t w = std::min(g.k, g.s - 1);
    o.expect_eq(sec - direct, (w + 1) * (g.k + 1) - 1, "fiber " + tag);
  }
}

void criterion_4(Outcome& o) {
  std::size_t applicable = 0;
  for (const auto& g : slice_map_grid()) {
    const auto rep = gs_report(spec(g.x), g.k, g.s);
    if (!(g.k <= g.s - 1 && g.s - 1 < rep.r)) continue;
    ++applicable;
    const std::string tag = g.x + " k=" + std::to_string(g.k) + " s=" + std::to_string(g.s);
    o.expect_eq(rep.defect, rep.segre_secant.defect, "defects " + tag);
    o.expect_eq(rep.segre_secant.dim - rep.dim_direct, g.k * g.k + 2 * g.k, "gap " + tag);
  }
  o.expect(applicable > 0, "grid has applicable points");
}

void criterion_5(Outcome& o) {
  for (const auto& [x, k] : std::vector<std::pair<std::string, std::size_t>>{{"2:2", 3}, {"3:2", 6}, {"1:3", 2}}) {
    const auto rep = never_defective_check(spec(x), k);
    o.expect(!rep.reports.empty() && rep.reports.back().fills_ambient, x + " reaches fill");
    for (const auto& r : rep.reports) o.expect_eq(r.defect, 0u, x + " defect at s=" + std::to_string(r.s));
  }
}

void criterion_6(Outcome& o) {
  const auto x = spec("2:2");
  const std::size_t k = 6, s = 5, r = x.ambient_dim();
  const auto sec = secant_dim(segre_with_projective(x, k), s);
  const auto c = dimsegre_classify(x.dim(), r, k, s);
  o.expect_eq(sec.dim, s * (k + r - s + 2) - 1, "Terracini vs s(k+r-s+2)-1");
  o.expect_eq(sec.dim, 39u, "dim");
  o.expect_eq(sec.expected_dim, 41u, "expected dim");
  o.expect(c.label == DimsegreLabel::kIIb, "case ii-b");
  o.expect(c.predicted_dim == sec.dim, "classifier prediction");
  o.expect(c.defective == true, "defective flag");
}

void criterion_7(Outcome& o) {
  const PrimeField field;
  std::size_t witnesses = 0;
  std::uint64_t t = 0;
  for (const char* x : {"2:2", "1:3", "1,2", "2,2", "1,1,1"}) {
    for (int i = 0; i < 20; ++i, ++t) {
      const std::size_t k = 1 + t % 3, s = 1 + (t / 3) % 4;
      const auto wit = random_secant_point(spec(x), k, s, derive_seed({t, 0xacceULL}), field);
      const auto img = phi(wit.tensor);
      const std::string tag = std::string(x) + " witness " + std::to_string(t);
      o.expect(row_space_contains(wit.points, img.basis), "containment " + tag);
      o.expect_eq(rank(wit.tensor.slices()), std::min(k, s - 1) + 1, "slice rank " + tag);
      FieldSampler rng(field, derive_seed({t, 0x5ca1eULL}));
      for (int c = 0; c < 10; ++c) o.expect(phi(wit.tensor.scaled(rng.nonzero())).same_subspace(img), "scaling " + tag);
      ++witnesses;
    }
  }
  o.expect_eq(witnesses, 100u, "witness count");
}

void criterion_8(Outcome& o) {
  const PrimeField f5(5);
  const auto x = spec("1,1");
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto wit = random_secant_point(x, 1, 2, derive_seed({t, 0xcaf5ULL}), f5);
    const auto e_pi = count_decompositions(x, f5, 2, phi(wit.tensor));
    const auto e_b = count_decompositions(x, f5, 2, wit.tensor);
    o.expect_eq(e_pi, e_b, "instance " + std::to_string(t));
    o.expect(e_b >= 1, "B decomposes over F5 in instance " + std::to_string(t));
  }
}

void criterion_9(Outcome& o) {
  std::mt19937_64 gen(2718);
  const std::vector<std::string> xs{"1:3", "1:4", "1:6", "1:8", "2:2", "2:3", "2:4", "1,2", "1,1,1", "3:2", "1,3"};
  std::size_t holds = 0;
  for (int t = 0; t < 60; ++t) {
    const auto x = spec(xs[gen() % xs.size()]);
    const std::size_t s = 2 + gen() % 4;
    const std::size_t k = 1 + gen() % (s - 1);
    SamplingOptions opts;
    opts.seed = static_cast<std::uint64_t>(t);
    const auto v = theorem_tre(x, s, k, opts);
    const std::string tag = x.to_string() + " k=" + std::to_string(k) + " s=" + std::to_string(s);
    const auto back = verdict_from_json(Json::parse(to_json(v).dump()));
    o.expect(reevaluate_chain(back), "chain re-check " + tag);
    // Inequalities recomputed from the serialized inputs.
    const auto& hs = back.chain.at(0).hypotheses;
    const auto n = static_cast<std::int64_t>(x.dim()), r = static_cast<std::int64_t>(x.ambient_dim());
    const auto si = static_cast<std::int64_t>(s), ki = static_cast<std::int64_t>(k);
    o.expect(hs.at(2).passed == (r > si * n + si - 1), "r > sn+s-1 " + tag);
    o.expect(hs.at(4).passed == (si * n + (ki + 1) * (si - 1 - ki) < (ki + 1) * (r - ki)), "dimension count " + tag);
    if (back.verdict != Verdict::kHolds) continue;
    ++holds;
    o.expect(!secant_dim(segre_with_projective(x, static_cast<unsigned>(k)), s, opts).fills_ambient,
             "holds while sigma_s fills " + tag);
  }
  o.expect(holds > 0, "sweep produced positive verdicts");
}

void criterion_10(Outcome& o, const std::string& cli) {
  const auto a = run(cli + " reproduce --seed 7");
  const auto b = run(cli + " reproduce --seed 7");
  o.expect_eq(a.status, 0, "first run exit");
  o.expect_eq(b.status, 0, "second run exit");
  o.expect(!a.out.empty() && a.out == b.out, "byte-identical JSON");
  const auto p = run(cli + " reproduce --seed 7 --prime " + std::to_string(kDefaultPrime));
  const auto q = run(cli + " reproduce --seed 7 --prime " + std::to_string(kConfirmPrime));
  o.expect_eq(p.status, 0, "default prime exit");
  o.expect_eq(q.status, 0, "confirmation prime exit");
  try {
    const auto jp = Json::parse(p.out), jq = Json::parse(q.out);
    const auto& cp = jp.at("checks");
    const auto& cq = jq.at("checks");
    o.expect_eq(cp.size(), cq.size(), "row count");
    for (std::size_t i = 0; i < std::min(cp.size(), cq.size()); ++i) {
      o.expect(cp[i].at("name") == cq[i].at("name") && cp[i].at("computed") == cq[i].at("computed"),
               "row " + cp[i].at("name").get<std::string>());
    }
  } catch (const std::exception& e) {
    o.expect(false, std::string("unparsable output: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance_test <path-to-grasec>\n";
    return 1;
  }
  const std::string cli = argv[1];
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 = no stated limit
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "pencils of 2x2x2x2 tensors: generic rank 6", 1, criterion_1},
      {2, "4x4 matrix systems: generic rank 7", 2, criterion_2},
      {3, "slice-map identity on the grid", 60, criterion_3},
      {4, "defect equality on the grid", 0, criterion_4},
      {5, "k = r - n is never defective", 120, criterion_5},
      {6, "defective case ii-b instance", 0, criterion_6},
      {7, "slice map consistency on 100 witnesses", 0, criterion_7},
      {8, "|E(Pi)| = |E(B)| on 20 instances over F5", 60, criterion_8},
      {9, "numeric criterion soundness and JSON re-check", 0, criterion_9},
      {10, "determinism of reproduce", 0, [&](Outcome& o) { criterion_10(o, cli); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s) o.expect(false, "runtime limit " + std::to_string(c.limit_s) + " s");
    std::printf("%s  criterion %2d  %-48s %8.3f s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.str().c_str());
    failures += !o.ok;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
