// Wall-clock comparison of the threaded outcome atlas against its serial
// reference, plus the two large-market baselines. Prints numbers, checks
// nothing beyond output agreement; the test suite owns correctness.
#include "smgame/coalition.hpp"
#include "smgame/engine.hpp"
#include "smgame/oracle.hpp"

#include "CLI11.hpp"
#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>

using namespace smgame;

namespace {

template <typename F>
double timed_ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"timing baselines"};
  int markets = 4;
  std::uint64_t seed = 1;
  app.add_option("--markets", markets, "random atlas markets to sweep");
  app.add_option("--seed", seed, "seed of the first market");
  CLI11_PARSE(app, argc, argv);

  std::vector<Instance> sweep;
  for (int i = 0; i < markets; ++i)
    sweep.push_back(gen_random(4, seed + (std::uint64_t)i).inst);

  std::uint64_t plays = 0;
  bool agree = true;
  std::vector<OutcomeAtlas> serial(sweep.size()), threaded(sweep.size());
  double ts = timed_ms([&] {
    for (size_t i = 0; i < sweep.size(); ++i)
      serial[i] = enumerate_static_outcomes_serial(sweep[i], ProfileSpace::All);
  });
  double tp = timed_ms([&] {
    for (size_t i = 0; i < sweep.size(); ++i)
      threaded[i] = enumerate_static_outcomes(sweep[i], ProfileSpace::All);
  });
  for (size_t i = 0; i < sweep.size(); ++i) {
    plays += serial[i].combinations();
    if (!(serial[i] == threaded[i])) agree = false;
  }

  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("atlas n=4 all profiles, %d markets, %llu plays\n", markets,
              (unsigned long long)plays);
  std::printf("  serial    %8.1f ms\n", ts);
  std::printf("  threaded  %8.1f ms  (%d threads, %.1fx, outputs %s)\n", tp,
              threads, tp > 0 ? ts / tp : 0.0, agree ? "agree" : "DISAGREE");

  Instance big = gen_random(200, 424242).inst;
  CoalitionStableResult settled;
  double tc = timed_ms([&] { settled = coalition_stable_matching(big); });
  std::printf("coalition n=200       %8.1f ms  (%zu passes)\n", tc,
              settled.iterations.size());

  Instance blaze = gen_inferno(100).inst;
  PlayTrace burn;
  double tg = timed_ms([&] { burn = run_gale_shapley(blaze); });
  std::printf("cascade n=100         %8.1f ms  (%d proposals)\n", tg,
              burn.proposal_count());

  return agree ? 0 : 1;
}
