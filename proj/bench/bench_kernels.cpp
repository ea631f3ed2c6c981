// Serial vs OpenMP timings for the two parallel paths: the Zivot-Andrews
// break search and the full battery.
#include <chrono>
#include <cstdio>
#include <fmt/format.h>

#include "stk/execution.hpp"
#include "stk/report.hpp"
#include "stk/synth.hpp"
#include "stk/trend.hpp"

namespace {

template <class Fn>
double best_of(int reps, Fn&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        best = std::min(best, s);
    }
    return best;
}

}  // namespace

int main() {
    using namespace stk;
    fmt::print("threads available: {}\n", max_threads());
    for (std::size_t n : {250u, 1000u, 4000u}) {
        SynthSpec spec;
        spec.n = n;
        spec.trend_slope = 0.05;
        spec.seasonal_amplitude = 1.0;
        const TimeSeries ts = generate(spec);
        const auto lag = select_adf_lag(ts.values(), TrendSpec::ConstantTrend);

        const int reps = n > 2000 ? 2 : 5;
        const double za_serial = best_of(reps, [&] { (void)za_break_search(ts.values(), lag, Execution::Serial); });
        const double za_par = best_of(reps, [&] { (void)za_break_search(ts.values(), lag, Execution::Parallel); });
        const double all_serial = best_of(reps, [&] { (void)detect_all(ts, {}, Execution::Serial); });
        const double all_par = best_of(reps, [&] { (void)detect_all(ts, {}, Execution::Parallel); });
        fmt::print("n={:5}  za_break_search serial {:8.4f}s parallel {:8.4f}s  |  detect_all serial {:8.4f}s "
                   "parallel {:8.4f}s\n",
                   n, za_serial, za_par, all_serial, all_par);
    }
    return 0;
}
