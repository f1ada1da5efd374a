#include <benchmark/benchmark.h>

#include "kancat/builtins.hpp"
#include "kancat/dsl.hpp"
#include "kancat/iso.hpp"
#include "kancat/kan.hpp"
#include "kancat/kleisli.hpp"
#include "kancat/select.hpp"
#include "kancat/windowed.hpp"

using namespace kancat;

namespace {

const Bounds kBounds{};

void BM_DensityComonad(benchmark::State& state) {
    const auto p = elts_family(chain_category(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(density_comonad(p, kBounds));
}
BENCHMARK(BM_DensityComonad)->DenseRange(2, 5);

void BM_SelectionCategory(benchmark::State& state) {
    const auto c = walking_arrow();
    const auto p = poly_from_arities({static_cast<std::size_t>(state.range(0))});
    for (auto _ : state) benchmark::DoNotOptimize(selection_category(c, p, kBounds));
}
BENCHMARK(BM_SelectionCategory)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_CmdLeftSelection(benchmark::State& state) {
    const auto c = walking_arrow();
    const auto p = poly_family(poly_from_arities({static_cast<std::size_t>(state.range(0))}));
    const auto k = category_comonad(c);
    for (auto _ : state) benchmark::DoNotOptimize(cmd_left(p, k, kBounds));
}
BENCHMARK(BM_CmdLeftSelection)->DenseRange(1, 3);

void BM_KleisliDeltaOp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(materialize(kleisli_subcategory(paths_family(n), frcat_monad(), n, kBounds)));
    }
}
BENCHMARK(BM_KleisliDeltaOp)->DenseRange(1, 3);

void BM_IsoDeltaOp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto a = materialize(kleisli_subcategory(paths_family(n), frcat_monad(), n, kBounds));
    const auto b = materialize(build_delta_op(n));
    for (auto _ : state) benchmark::DoNotOptimize(category_iso(a, b));
}
BENCHMARK(BM_IsoDeltaOp)->DenseRange(1, 3);

void BM_ValidatePowersetWindow(benchmark::State& state) {
    const auto w = materialize(kleisli_subcategory(finite_sets_family(3), powerset_monad(), 3, kBounds));
    for (auto _ : state) benchmark::DoNotOptimize(validate_category(w));
}
BENCHMARK(BM_ValidatePowersetWindow)->Unit(benchmark::kMillisecond);

void BM_ComonadLaws(benchmark::State& state) {
    const auto k = category_to_comonad(selection_category(walking_arrow(), parse_poly("y^3"), kBounds));
    for (auto _ : state) benchmark::DoNotOptimize(check_comonad_laws(k));
}
BENCHMARK(BM_ComonadLaws);

void BM_ParseProgram(benchmark::State& state) {
    const std::string text =
        "D = lan(paths, paths . frcat)\ncheck comonad_laws(D)\ncheck iso_window(D, delta_op)\n"
        "S = lan(2y^5 + y^4 + 3y^3 . category_comonad(walking_arrow), 2y^5 + y^4 + 3y^3)\nexport dot S\n";
    for (auto _ : state) benchmark::DoNotOptimize(parse_program(text));
}
BENCHMARK(BM_ParseProgram);

}  // namespace
BENCHMARK_MAIN();
