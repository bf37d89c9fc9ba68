#include <algorithm>
#include <sstream>
#include <tuple>

#include "genhilbert/errors.hpp"
#include "genhilbert/measure.hpp"
#include "json.hpp"

namespace genhilbert {

namespace {

using nlohmann::json;

// Reads obj[key] as a number, recording a problem under `path` otherwise.
double read_number(const json& obj, const char* key, const std::string& path,
                   std::vector<std::string>& problems) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        problems.push_back(path + "/" + key + ": missing");
        return 0.0;
    }
    if (!it->is_number()) {
        problems.push_back(path + "/" + key + ": expected a number");
        return 0.0;
    }
    return it->get<double>();
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& path, std::vector<std::string>& problems) {
    for (const auto& [key, _] : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* a) { return key == a; });
        if (!known) {
            problems.push_back(path + "/" + key + ": unknown field");
        }
    }
}

}  // namespace

Measure parse_measure(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::ostringstream os;
        os << "measure spec is not valid JSON (byte " << e.byte << "): " << e.what();
        throw ParseError(os.str());
    }

    std::vector<std::string> problems;
    std::vector<Atom> atoms;
    std::vector<BetaComponent> densities;

    if (!doc.is_object()) {
        throw ValidationError("/: measure spec must be a JSON object");
    }
    reject_unknown_keys(doc, {"atoms", "densities"}, "", problems);

    if (const auto it = doc.find("atoms"); it != doc.end()) {
        if (!it->is_array()) {
            problems.push_back("/atoms: expected an array");
        } else {
            for (std::size_t i = 0; i < it->size(); ++i) {
                const json& el = (*it)[i];
                const std::string path = "/atoms/" + std::to_string(i);
                if (!el.is_object()) {
                    problems.push_back(path + ": expected an object");
                    continue;
                }
                reject_unknown_keys(el, {"t", "mass"}, path, problems);
                atoms.push_back({read_number(el, "t", path, problems),
                                 read_number(el, "mass", path, problems)});
            }
        }
    }
    if (const auto it = doc.find("densities"); it != doc.end()) {
        if (!it->is_array()) {
            problems.push_back("/densities: expected an array");
        } else {
            for (std::size_t i = 0; i < it->size(); ++i) {
                const json& el = (*it)[i];
                const std::string path = "/densities/" + std::to_string(i);
                if (!el.is_object()) {
                    problems.push_back(path + ": expected an object");
                    continue;
                }
                reject_unknown_keys(el, {"coef", "a", "b"}, path, problems);
                densities.push_back({read_number(el, "coef", path, problems),
                                     read_number(el, "a", path, problems),
                                     read_number(el, "b", path, problems)});
            }
        }
    }
    if (!problems.empty()) {
        std::string msg;
        for (const std::string& p : problems) {
            msg += (msg.empty() ? "" : "; ") + p;
        }
        throw ValidationError(msg);
    }
    // Range invariants are checked (with the same paths) by the constructor.
    return Measure(std::move(atoms), std::move(densities));
}

std::string serialize_measure(const Measure& mu) {
    std::vector<Atom> atoms = mu.atoms();
    std::vector<BetaComponent> dens = mu.densities();
    std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) {
        return std::tie(x.t, x.mass) < std::tie(y.t, y.mass);
    });
    std::stable_sort(dens.begin(), dens.end(), [](const BetaComponent& x, const BetaComponent& y) {
        return std::tie(x.a, x.b, x.coef) < std::tie(y.a, y.b, y.coef);
    });

    nlohmann::ordered_json out;
    out["atoms"] = nlohmann::ordered_json::array();
    for (const Atom& a : atoms) {
        out["atoms"].push_back({{"t", a.t}, {"mass", a.mass}});
    }
    out["densities"] = nlohmann::ordered_json::array();
    for (const BetaComponent& d : dens) {
        out["densities"].push_back({{"coef", d.coef}, {"a", d.a}, {"b", d.b}});
    }
    return out.dump();
}

}  // namespace genhilbert
