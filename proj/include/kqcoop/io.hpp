#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "kqcoop/comodule.hpp"
#include "kqcoop/ext.hpp"

namespace kqcoop {

inline constexpr const char* kEngineVersion = "kqcoop-ext-1";

// M2, HZ<n>, kq<n>, HZ1^<k>, AmodA0, AmodA1 (truncated at t_max), tensor:<spec>,<spec>,...
Comodule module_from_spec(const std::string& spec, int t_max = 24, int w_min = -4);

std::string chart_to_json(const ExtChart& chart);
ExtChart chart_from_json(const std::string& text);
std::string chart_to_tsv(const ExtChart& chart);
// black dot: tau-free generator, red dot: tau-torsion generator; vertical h0 and diagonal h1 segments
std::string chart_to_svg(const ExtChart& chart);
std::string comodule_to_json(const Comodule& m);

uint64_t fnv1a(const std::string& s);

class ChartCache {
public:
    explicit ChartCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
    static std::string key(const std::string& module_spec, const Window& w);
    std::optional<ExtChart> load(const std::string& key) const;
    void store(const std::string& key, const ExtChart& chart) const;  // write to a temp file, then rename
    std::filesystem::path path(const std::string& key) const;

private:
    std::filesystem::path dir_;
};

// cached chart when a cache directory is given, else a fresh computation
ExtChart chart_for(const std::string& module_spec, const Window& w, const std::optional<std::filesystem::path>& cache_dir);

}  // namespace kqcoop
