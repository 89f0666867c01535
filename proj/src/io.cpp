#include "kqcoop/io.hpp"

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>
#include <unistd.h>

using nlohmann::ordered_json;

namespace kqcoop {

Comodule module_from_spec(const std::string& spec, int t_max, int w_min) {
    std::smatch m;
    if (spec == "M2") return m2_comodule();
    if (spec == "AmodA0") return restrict_coaction(AlgebraSpec::a_mod_a_n_dual(0), t_max, w_min);
    if (spec == "AmodA1") return restrict_coaction(AlgebraSpec::a_mod_a_n_dual(1), t_max, w_min);
    if (std::regex_match(spec, m, std::regex(R"(HZ1\^(\d+))"))) return tensor_power(brown_gitler(BGKind::integral, 1), std::stoi(m[1]));
    if (std::regex_match(spec, m, std::regex(R"(HZ(\d+))"))) return brown_gitler(BGKind::integral, std::stoi(m[1]));
    if (std::regex_match(spec, m, std::regex(R"(kq(\d+))"))) return brown_gitler(BGKind::kq, std::stoi(m[1]));
    if (spec.rfind("tensor:", 0) == 0) {
        std::stringstream ss(spec.substr(7));
        std::string part;
        std::optional<Comodule> acc;
        while (std::getline(ss, part, ',')) {
            Comodule c = module_from_spec(part, t_max, w_min);
            acc = acc ? tensor(*acc, c) : c;
        }
        if (!acc) throw std::invalid_argument("empty tensor spec");
        return *acc;
    }
    throw std::invalid_argument("unknown module spec '" + spec + "'");
}

namespace {

ordered_json window_json(const Window& w) {
    return {{"s_max", w.s_max}, {"t_max", w.t_max}, {"w_min", w.w_min}, {"pad", w.pad}};
}

ordered_json chart_json(const ExtChart& ch) {
    ordered_json j;
    j["module"] = ch.module;
    j["window"] = window_json(ch.window);
    j["cells"] = ordered_json::array();
    for (const auto& [c, d] : ch.dims) {
        if (!ch.reported(c)) continue;
        ordered_json gens = ordered_json::array();
        for (int k = 0; k < d; ++k) gens.push_back(ch.gen_name(c, k));
        j["cells"].push_back({{"s", c.s}, {"t", c.t}, {"w", c.w}, {"dim", d}, {"gens", gens}});
    }
    ordered_json acts = ordered_json::object();
    for (const auto& [g, deg] : action_generators()) {
        ordered_json edges = ordered_json::array();
        for (const auto& [c, d] : ch.dims) {
            if (!ch.reported(c)) continue;
            Tri c2 = c + deg;
            if (ch.unknown.count(g) && ch.unknown.at(g).count(c)) {
                for (int k = 0; k < d; ++k) edges.push_back({{"from", ch.gen_name(c, k)}, {"to", nullptr}});
                continue;
            }
            const MatrixF2* m = ch.action(g, c);
            if (!m) continue;
            for (int k = 0; k < d; ++k)
                for (size_t r = 0; r < m->rows(); ++r)
                    if (m->at(r, k)) edges.push_back({{"from", ch.gen_name(c, k)}, {"to", ch.gen_name(c2, static_cast<int>(r))}});
        }
        acts[g] = edges;
    }
    j["actions"] = acts;
    return j;
}

// "module:s.t.w.k" -> (cell, k); the module name may itself contain ':'
std::pair<Tri, int> parse_gen(const std::string& name) {
    auto colon = name.rfind(':');
    std::stringstream ss(name.substr(colon + 1));
    std::string part;
    std::vector<int> v;
    while (std::getline(ss, part, '.')) v.push_back(std::stoi(part));
    if (v.size() != 4) throw std::invalid_argument("bad generator name " + name);
    return {{v[0], v[1], v[2]}, v[3]};
}

}  // namespace

std::string chart_to_json(const ExtChart& chart) { return chart_json(chart).dump(1) + "\n"; }

ExtChart chart_from_json(const std::string& text) {
    auto j = ordered_json::parse(text);
    ExtChart ch;
    ch.module = j.at("module").get<std::string>();
    const auto& w = j.at("window");
    ch.window = Window{w.at("s_max"), w.at("t_max"), w.at("w_min"), w.at("pad")};
    for (const auto& c : j.at("cells")) ch.dims[{c.at("s"), c.at("t"), c.at("w")}] = c.at("dim");
    for (const auto& [g, deg] : action_generators()) {
        if (!j.at("actions").contains(g)) continue;
        std::map<Tri, MatrixF2> mats;
        for (const auto& e : j["actions"][g]) {
            auto [c, k] = parse_gen(e.at("from"));
            if (e.at("to").is_null()) {
                ch.unknown[g].insert(c);
                continue;
            }
            auto [c2, r] = parse_gen(e.at("to"));
            auto it = mats.find(c);
            if (it == mats.end()) it = mats.emplace(c, MatrixF2(ch.dim(c2), ch.dim(c))).first;
            it->second.set(r, k);
        }
        for (const auto& [c, d] : ch.dims) {
            if (ch.unknown[g].count(c)) continue;
            auto it = mats.find(c);
            ch.actions[g].emplace(c, it != mats.end() ? it->second : MatrixF2(ch.dim(c + deg), d));
        }
        if (ch.unknown[g].empty()) ch.unknown.erase(g);
    }
    return ch;
}

std::string chart_to_tsv(const ExtChart& chart) {
    std::string out = "s\tt\tw\tdim\tgens\n";
    for (const auto& [c, d] : chart.dims) {
        if (!chart.reported(c)) continue;
        out += std::to_string(c.s) + "\t" + std::to_string(c.t) + "\t" + std::to_string(c.w) + "\t" + std::to_string(d) + "\t";
        for (int k = 0; k < d; ++k) out += (k ? "," : "") + chart.gen_name(c, k);
        out += "\n";
    }
    return out;
}

std::string chart_to_svg(const ExtChart& chart) {
    const int S = chart.window.s_max, T = chart.window.t_max;
    const int cell = 28, margin = 30;
    const int width = margin * 2 + cell * (T + 1), height = margin * 2 + cell * (S + 1);
    auto px = [&](int stem) { return margin + cell * stem + cell / 2; };
    auto py = [&](int s) { return height - margin - cell * s - cell / 2; };
    // per (s,t): generators split into tau-free and tau-torsion
    std::map<std::pair<int, int>, std::pair<int, int>> dots;
    auto free = tau_free_generators(chart, false);
    for (const auto& [c, n] : free.count) dots[{c.s, c.t}].first += n;
    for (const auto& [c, d] : chart.dims) {
        if (!chart.reported(c)) continue;
        Tri above{c.s, c.t, c.w + 1};
        const MatrixF2* tau = chart.action("tau", above);
        int image = tau ? static_cast<int>(rank(*tau)) : 0;
        dots[{c.s, c.t}].second += d - image;
    }
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << margin << "\" y=\"16\" font-size=\"12\">" << chart.module << "</text>\n";
    for (int st = 0; st <= T; st += 2)
        o << "<text x=\"" << px(st) - 4 << "\" y=\"" << height - 8 << "\" font-size=\"10\">" << st << "</text>\n";
    for (int s = 0; s <= S; ++s) o << "<text x=\"4\" y=\"" << py(s) + 4 << "\" font-size=\"10\">" << s << "</text>\n";
    auto edge = [&](const std::string& g, int ds, int dt) {
        std::set<std::pair<int, int>> seen;
        for (const auto& [c, d] : chart.dims) {
            if (!chart.reported(c) || c.stem() > T) continue;
            const MatrixF2* m = chart.action(g, c);
            Tri c2 = c + Tri{ds, dt, 0};
            if (!m || m->is_zero() || !chart.reported(c2) || c2.stem() > T || !seen.insert({c.s, c.t}).second) continue;
            o << "<line x1=\"" << px(c.stem()) << "\" y1=\"" << py(c.s) << "\" x2=\"" << px(c2.stem()) << "\" y2=\"" << py(c2.s)
              << "\" stroke=\"black\"/>\n";
        }
    };
    edge("h0", 1, 1);
    edge("h1", 1, 2);
    for (const auto& [st, n] : dots) {
        auto [s, t] = st;
        if (t - s > T) continue;
        int black = n.first, red = std::max(0, n.second - n.first), k = 0;
        for (int i = 0; i < black + red; ++i, ++k)
            o << "<circle cx=\"" << px(t - s) + 5 * k - 5 * (black + red - 1) / 2 << "\" cy=\"" << py(s) << "\" r=\"3\" fill=\""
              << (i < black ? "black" : "red") << "\"/>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string comodule_to_json(const Comodule& m) {
    ordered_json j;
    j["name"] = m.name;
    j["basis"] = ordered_json::array();
    for (size_t i = 0; i < m.rank(); ++i) {
        const auto& b = m.basis[i];
        ordered_json e{{"label", b.label}, {"t", b.degree.t}, {"w", b.degree.w}};
        if (b.weight) e["weight"] = *b.weight;
        ordered_json co = ordered_json::array();
        for (const auto& term : m.coaction[i])
            co.push_back({{"left", a1_basis()[term.a].str()}, {"right", m.basis[term.target].label}, {"tau", term.tau_shift}});
        e["coaction"] = co;
        j["basis"].push_back(e);
    }
    return j.dump(1) + "\n";
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string ChartCache::key(const std::string& module_spec, const Window& w) {
    return "module=" + module_spec + ";s=" + std::to_string(w.s_max) + ";t=" + std::to_string(w.t_max) +
           ";w=" + std::to_string(w.w_min) + ";pad=" + std::to_string(w.pad) + ";engine=" + kEngineVersion;
}

std::filesystem::path ChartCache::path(const std::string& key) const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(key)));
    return dir_ / (std::string(buf) + ".json");
}

std::optional<ExtChart> ChartCache::load(const std::string& key) const {
    std::ifstream in(path(key));
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    return chart_from_json(ss.str());
}

void ChartCache::store(const std::string& key, const ExtChart& chart) const {
    std::filesystem::create_directories(dir_);
    auto final_path = path(key);
    auto tmp = final_path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary);
        out << chart_to_json(chart);
        if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, final_path);
}

ExtChart chart_for(const std::string& module_spec, const Window& w, const std::optional<std::filesystem::path>& cache_dir) {
    std::optional<ChartCache> cache;
    std::string key = ChartCache::key(module_spec, w);
    if (cache_dir) {
        cache.emplace(*cache_dir);
        if (auto hit = cache->load(key)) return *hit;
    }
    Comodule m = module_from_spec(module_spec, w.t_comp(), w.w_min);
    ExtChart ch = ext_chart(m, w);
    if (cache) cache->store(key, ch);
    return ch;
}

}  // namespace kqcoop
