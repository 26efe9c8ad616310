#include "roig/instance.hpp"

#include "roig/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace roig {

using nlohmann::json;

LabeledMultiset::LabeledMultiset(const std::vector<LabeledExample>& examples) {
    std::map<LabeledExample, int> counts;
    for (const auto& ex : examples) counts[ex]++;
    entries_.assign(counts.begin(), counts.end());
    size_ = static_cast<int>(examples.size());
}

int LabeledMultiset::count(const LabeledExample& ex) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), ex,
                               [](const auto& e, const LabeledExample& x) { return e.first < x; });
    if (it != entries_.end() && it->first == ex) return it->second;
    return 0;
}

LabeledMultiset LabeledMultiset::plus(const LabeledExample& ex) const {
    LabeledMultiset out = *this;
    auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), ex,
                               [](const auto& e, const LabeledExample& x) { return e.first < x; });
    if (it != out.entries_.end() && it->first == ex) {
        it->second++;
    } else {
        out.entries_.insert(it, {ex, 1});
    }
    out.size_++;
    return out;
}

LabeledMultiset LabeledMultiset::minus_one(const LabeledExample& ex) const {
    LabeledMultiset out = *this;
    auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), ex,
                               [](const auto& e, const LabeledExample& x) { return e.first < x; });
    if (it == out.entries_.end() || !(it->first == ex))
        throw DomainError("minus_one: element not in multiset");
    if (--it->second == 0) out.entries_.erase(it);
    out.size_--;
    return out;
}

std::vector<LabeledExample> LabeledMultiset::expand() const {
    std::vector<LabeledExample> out;
    out.reserve(size_);
    for (const auto& [ex, mult] : entries_)
        for (int i = 0; i < mult; ++i) out.push_back(ex);
    return out;
}

size_t MultisetHash::operator()(const LabeledMultiset& m) const {
    size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& [ex, mult] : m.entries()) {
        size_t k = (static_cast<size_t>(ex.point) << 20) ^
                   (static_cast<size_t>(ex.label + 1) << 10) ^ static_cast<size_t>(mult);
        h ^= k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

bool ProblemInstance::in_perturbation(int x, int z) const {
    const auto& u = perturbations.at(x);
    return std::binary_search(u.begin(), u.end(), z);
}

void ProblemInstance::check_point(int x) const {
    if (x < 0 || x >= num_points()) throw DomainError("unknown point index " + std::to_string(x));
}

namespace {

void finalize(ProblemInstance& inst) {
    // Deduplicate hypotheses by full truth table, merging names in document order.
    std::map<std::vector<int8_t>, size_t> seen;
    std::vector<Hypothesis> kept;
    for (auto& h : inst.hypotheses) {
        auto it = seen.find(h.labels);
        if (it == seen.end()) {
            seen.emplace(h.labels, kept.size());
            kept.push_back(std::move(h));
        } else {
            kept[it->second].name += "|" + h.name;
        }
    }
    inst.hypotheses = std::move(kept);

    // Inverse perturbation index U^{-1}(z) = {x : z in U(x)}.
    inst.inverse_perturbations.assign(inst.points.size(), {});
    for (int x = 0; x < inst.num_points(); ++x)
        for (int z : inst.perturbations[x]) inst.inverse_perturbations[z].push_back(x);
}

void validate_distribution(const ProblemInstance& inst, DiscreteDistribution& dist) {
    Rat total = 0;
    std::set<LabeledExample> distinct;
    for (auto& atom : dist.atoms) {
        inst.check_point(atom.example.point);
        if (atom.example.label != 1 && atom.example.label != -1)
            throw ParseError("distribution '" + dist.name + "': label must be 1 or -1");
        if (atom.weight < 0)
            throw ParseError("distribution '" + dist.name + "': negative weight");
        if (!distinct.insert(atom.example).second)
            throw ParseError("distribution '" + dist.name + "': duplicate atom");
        total += atom.weight;
    }
    if (total == 0) throw ParseError("distribution '" + dist.name + "': zero total weight");
    Rat err = total - 1;
    if (err < 0) err = -err;
    if (err > Rat(1, 1000000000000LL))
        throw ParseError("distribution '" + dist.name + "': weights sum to " +
                         std::to_string(to_double(total)) + ", not 1");
    std::erase_if(dist.atoms, [](const DistAtom& a) { return a.weight == 0; });
    for (auto& atom : dist.atoms) atom.weight /= total;  // exact renormalization
    std::sort(dist.atoms.begin(), dist.atoms.end(),
              [](const DistAtom& a, const DistAtom& b) { return a.example < b.example; });
}

}  // namespace

ProblemInstance make_instance(std::vector<std::string> points,
                              std::vector<std::pair<std::string, std::vector<int8_t>>> hypotheses,
                              std::vector<std::vector<int>> perturbations,
                              std::vector<DiscreteDistribution> distributions) {
    ProblemInstance inst;
    inst.points = std::move(points);
    for (int i = 0; i < inst.num_points(); ++i) {
        if (!inst.point_index.emplace(inst.points[i], i).second)
            throw ParseError("duplicate point '" + inst.points[i] + "'");
    }
    if (perturbations.size() != inst.points.size())
        throw ParseError("perturbation map must cover every point");
    for (int x = 0; x < inst.num_points(); ++x) {
        auto& u = perturbations[x];
        if (u.empty()) throw ParseError("empty perturbation set for '" + inst.points[x] + "'");
        for (int z : u)
            if (z < 0 || z >= inst.num_points())
                throw ParseError("perturbation of '" + inst.points[x] + "' is not a known point");
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
    }
    inst.perturbations = std::move(perturbations);
    for (auto& [name, labels] : hypotheses) {
        if (static_cast<int>(labels.size()) != inst.num_points())
            throw ParseError("hypothesis '" + name + "' is not a total truth table");
        for (int8_t l : labels)
            if (l != 1 && l != -1)
                throw ParseError("hypothesis '" + name + "': labels must be +1 or -1");
        inst.hypotheses.push_back({name, labels});
    }
    finalize(inst);
    for (auto& d : distributions) validate_distribution(inst, d);
    inst.distributions = std::move(distributions);
    return inst;
}

ProblemInstance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("points") || !doc.contains("perturbations") ||
        !doc.contains("hypotheses"))
        throw ParseError("instance document needs points, perturbations, hypotheses");

    std::vector<std::string> points;
    for (const auto& p : doc.at("points")) points.push_back(p.get<std::string>());
    std::unordered_map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) index.emplace(points[i], i);

    auto lookup = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) throw ParseError("unknown point '" + name + "'");
        return it->second;
    };

    std::vector<std::vector<int>> perturbations(points.size());
    const auto& pert = doc.at("perturbations");
    for (size_t i = 0; i < points.size(); ++i) {
        if (!pert.contains(points[i]))
            throw ParseError("missing perturbation set for '" + points[i] + "'");
        for (const auto& z : pert.at(points[i]))
            perturbations[i].push_back(lookup(z.get<std::string>()));
        if (perturbations[i].empty())
            throw ParseError("empty perturbation set for '" + points[i] + "'");
    }

    std::vector<std::pair<std::string, std::vector<int8_t>>> hypotheses;
    for (const auto& h : doc.at("hypotheses")) {
        std::string name = h.value("name", "h" + std::to_string(hypotheses.size()));
        std::vector<int8_t> labels(points.size(), 0);
        const auto& tab = h.at("labels");
        for (size_t i = 0; i < points.size(); ++i) {
            if (!tab.contains(points[i]))
                throw ParseError("hypothesis '" + name + "': missing label for '" + points[i] + "'");
            int l = tab.at(points[i]).get<int>();
            if (l != 1 && l != -1)
                throw ParseError("hypothesis '" + name + "': labels must be 1 or -1");
            labels[i] = static_cast<int8_t>(l);
        }
        for (const auto& [key, _] : tab.items())
            if (index.find(key) == index.end())
                throw ParseError("hypothesis '" + name + "': unknown point '" + key + "'");
        hypotheses.emplace_back(std::move(name), std::move(labels));
    }

    std::vector<DiscreteDistribution> distributions;
    if (doc.contains("distributions")) {
        for (const auto& d : doc.at("distributions")) {
            DiscreteDistribution dist;
            dist.name = d.value("name", "D" + std::to_string(distributions.size()));
            for (const auto& a : d.at("atoms")) {
                DistAtom atom;
                atom.example.point = lookup(a.at("point").get<std::string>());
                atom.example.label = a.at("label").get<int>();
                const auto& w = a.at("weight");
                atom.weight = w.is_string() ? parse_rational(w.get<std::string>())
                                            : Rat(w.get<double>());
                dist.atoms.push_back(std::move(atom));
            }
            distributions.push_back(std::move(dist));
        }
    }
    return make_instance(std::move(points), std::move(hypotheses), std::move(perturbations),
                         std::move(distributions));
}

std::string serialize_instance(const ProblemInstance& inst) {
    json doc;
    doc["points"] = inst.points;
    json pert = json::object();
    for (int x = 0; x < inst.num_points(); ++x) {
        json u = json::array();
        for (int z : inst.perturbations[x]) u.push_back(inst.points[z]);
        pert[inst.points[x]] = std::move(u);
    }
    doc["perturbations"] = std::move(pert);
    json hyps = json::array();
    for (const auto& h : inst.hypotheses) {
        json labels = json::object();
        for (int x = 0; x < inst.num_points(); ++x) labels[inst.points[x]] = int(h.labels[x]);
        hyps.push_back({{"name", h.name}, {"labels", std::move(labels)}});
    }
    doc["hypotheses"] = std::move(hyps);
    if (!inst.distributions.empty()) {
        json dists = json::array();
        for (const auto& d : inst.distributions) {
            json atoms = json::array();
            for (const auto& a : d.atoms)
                atoms.push_back({{"point", inst.points[a.example.point]},
                                 {"label", a.example.label},
                                 {"weight", rational_string(a.weight)}});
            dists.push_back({{"name", d.name}, {"atoms", std::move(atoms)}});
        }
        doc["distributions"] = std::move(dists);
    }
    return doc.dump(2);
}

LabeledMultiset canonical_multiset(const ProblemInstance& instance,
                                   const std::vector<LabeledExample>& examples) {
    for (const auto& ex : examples) {
        instance.check_point(ex.point);
        if (ex.label != 1 && ex.label != -1) throw DomainError("label must be +1 or -1");
    }
    return LabeledMultiset(examples);
}

DiscreteDistribution uniform_distribution(const LabeledMultiset& sample) {
    if (sample.empty()) throw DomainError("uniform_distribution: empty multiset");
    DiscreteDistribution dist;
    dist.name = "uniform";
    for (const auto& [ex, mult] : sample.entries())
        dist.atoms.push_back({ex, Rat(mult, sample.size())});
    return dist;
}

}  // namespace roig
