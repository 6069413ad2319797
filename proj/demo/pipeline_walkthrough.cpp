// End-to-end tour of the library: build a synthetic benchmark, align it with
// DTW, filter out corrupted pairs, train the selection scorer and compare the
// four training configurations.

#include <cstdint>
#include <iostream>

#include "glossalign/pipeline.hpp"
#include "glossalign/synthetic.hpp"

using namespace glossalign;

int main() {
    const std::uint64_t seed = 7;
    BenchmarkParams params;
    params.n_pairs = 60;
    const AlignmentBenchmark bench = make_alignment_benchmark(seed, params);
    std::cout << "benchmark: " << bench.pairs.size() << " pairs, " << bench.corrupted_ids.size()
              << " corrupted\n";

    const TargetMap targets = precompute_targets(bench.pairs, CostKind::euclidean);
    double clean_max = 0.0, corrupt_min = 1e9;
    for (const PairRecord& pair : bench.pairs) {
        const double cost = targets.at(pair.id).norm_cost;
        const bool corrupted = std::find(bench.corrupted_ids.begin(), bench.corrupted_ids.end(),
                                         pair.id) != bench.corrupted_ids.end();
        if (corrupted) {
            corrupt_min = std::min(corrupt_min, cost);
        } else {
            clean_max = std::max(clean_max, cost);
        }
    }
    std::cout << "normalized DTW cost: clean max " << clean_max << ", corrupted min " << corrupt_min
              << "\n";

    const std::vector<PairRecord> kept = filter_dataset(bench.pairs, targets, 0.5);
    std::cout << "filter at 0.5 keeps " << kept.size() << " of " << bench.pairs.size() << " pairs\n";

    RunConfig config;
    config.epochs = 15;
    config.lr = 0.5;
    config.seed = seed;
    const EfficiencyResult result = run_efficiency_experiment(bench.pairs, config, CostKind::euclidean);
    for (const auto& [mode, epochs] : result.modes) {
        std::cout << mode << ": accuracy " << epochs.front().accuracy << " -> "
                  << epochs.back().accuracy << " over " << epochs.size() << " epochs\n";
    }
    return 0;
}
