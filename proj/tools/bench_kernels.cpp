// Times the tuned refine/diameter kernels against the serial references on
// a ladder of generated graphs and checks they agree while at it.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "anelect/families.hpp"
#include "anelect/serial_ref.hpp"
#include "anelect/views.hpp"

using namespace anelect;

namespace {

uint64_t mix(uint64_t seed, uint64_t counter) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<int> seeded_perm_2_to_k(int k, uint64_t seed) {
  std::vector<int> perm;
  for (int i = 2; i <= k; ++i) perm.push_back(i);
  uint64_t counter = 0;
  for (int i = (int)perm.size() - 1; i > 0; --i)
    std::swap(perm[i], perm[mix(seed, counter++) % (uint64_t)(i + 1)]);
  return perm;
}

template <typename F>
double time_ms(F&& f, int reps) {
  auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
  struct Case {
    std::string name;
    PortGraph g;
  };
  std::vector<Case> cases;
  for (int k : {8, 16, 32, 64})
    cases.push_back({"ring_cliques_k" + std::to_string(k) + "_x5",
                     gen_ring_cliques(k, 5, seeded_perm_2_to_k(k, 7)).g});
  {
    NecklaceSpec sp;
    sp.k = 16;
    sp.x = 4;
    sp.phi = 6;
    sp.code.assign(sp.k, 0);
    for (int i = 1; i + 1 < sp.k; ++i) sp.code[i] = (i * 3) % (sp.x + 1);
    cases.push_back({"necklace_k16_x4_phi6", gen_necklace(sp).g});
  }
  {
    HairyRingSpec sp;
    sp.ring = 48;
    sp.stars.assign(sp.ring, 0);
    for (int i = 0; i < sp.ring; ++i) sp.stars[i] = (int)(mix(11, i) % 4);
    sp.stars[17] = 6;
    HairyRingResult h = gen_hairy_ring(sp);
    cases.push_back({"hairy_r48", h.g});
    cases.push_back({"stretch_r48_g4", gamma_stretch(cut(h), 4).g});
  }

  std::printf("%-24s %6s | %10s %10s %7s | %10s %10s %7s\n", "graph", "n", "refine_s",
              "refine_p", "speedup", "diam_s", "diam_p", "speedup");
  for (const auto& c : cases) {
    int reps = c.g.node_count() > 200 ? 3 : 10;
    Refinement rs, rp;
    int ds = 0, dp = 0;
    double t_rs = time_ms([&] { rs = serial::refine(c.g); }, reps);
    double t_rp = time_ms([&] { rp = refine(c.g, ExecMode::parallel); }, reps);
    double t_ds = time_ms([&] { ds = serial::diameter(c.g); }, reps);
    double t_dp = time_ms([&] { dp = diameter(c.g, ExecMode::parallel); }, reps);
    bool agree = ds == dp && rs.by_depth.size() == rp.by_depth.size();
    if (agree)
      for (size_t d = 0; d < rs.by_depth.size(); ++d)
        if (rs.by_depth[d].class_of != rp.by_depth[d].class_of) agree = false;
    if (!agree) {
      std::printf("%-24s kernels disagree\n", c.name.c_str());
      return 1;
    }
    std::printf("%-24s %6d | %8.2fms %8.2fms %6.2fx | %8.2fms %8.2fms %6.2fx\n",
                c.name.c_str(), c.g.node_count(), t_rs, t_rp, t_rs / t_rp, t_ds, t_dp,
                t_ds / t_dp);
  }
  return 0;
}
