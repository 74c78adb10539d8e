#include "motivic/workspace.hpp"

#include <fstream>

#include "motivic/classexpr.hpp"

namespace motivic {

using nlohmann::json;

namespace {

Exp2 parseIndexKey(const std::string& key) {
    // "(j,n)" or "j,n"
    std::string s = key;
    if (!s.empty() && s.front() == '(') s = s.substr(1);
    if (!s.empty() && s.back() == ')') s.pop_back();
    auto comma = s.find(',');
    if (comma == std::string::npos) throw Error("bad index key '" + key + "', expected \"(j,n)\"");
    try {
        long j = std::stol(s.substr(0, comma));
        long n = std::stol(s.substr(comma + 1));
        return {j, n};
    } catch (const std::exception&) {
        throw Error("bad index key '" + key + "'");
    }
}

GradedTable parseTable(const json& j) {
    GradedTable t;
    for (auto it = j.begin(); it != j.end(); ++it) {
        Int v;
        if (it.value().is_number_integer())
            v = Int(it.value().get<long>());
        else if (it.value().is_string())
            v = Int(it.value().get<std::string>(), 10);
        else
            throw Error("table values must be integers");
        if (v != 0) t[parseIndexKey(it.key())] = v;
    }
    return t;
}

Rat parseRational(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) {
        Rat r;
        if (r.set_str(j.get<std::string>(), 10) != 0)
            throw Error("bad rational '" + j.get<std::string>() + "'");
        r.canonicalize();
        return r;
    }
    throw Error("rationals must be integers or strings like \"1/2\"");
}

InvariantFamily::Kind parseKind(const std::string& s) {
    if (s == "graded") return InvariantFamily::Kind::IntegerGraded;
    if (s == "bipoly") return InvariantFamily::Kind::BipolyValued;
    throw Error("family kind must be \"graded\" or \"bipoly\", got '" + s + "'");
}

}  // namespace

const InvariantFamily& Workspace::family(const std::string& name) const {
    auto it = families.find(name);
    if (it == families.end()) throw Error("unknown invariant family '" + name + "'");
    return it->second;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

Workspace load_workspace(const json& j) {
    Workspace ws;
    if (j.contains("config")) {
        const auto& c = j.at("config");
        if (c.contains("detLimit")) ws.config.detLimit = Int(c.at("detLimit").get<long>());
        if (c.contains("order")) ws.config.expansionOrder = c.at("order").get<long>();
        if (c.contains("precision")) ws.config.precision = c.at("precision").get<long>();
    }
    for (const auto& v : j.value("varieties", json::array())) {
        VarietyRecord rec;
        rec.name = v.at("name").get<std::string>();
        rec.dimension = v.at("dim").get<long>();
        rec.smoothProjective = v.value("smoothProjective", false);
        if (v.contains("invariants")) {
            for (auto it = v.at("invariants").begin(); it != v.at("invariants").end(); ++it) {
                if (it.value().is_string())
                    rec.polys[it.key()] = parse_bipoly(it.value().get<std::string>());
                else
                    rec.tables[it.key()] = parseTable(it.value());
            }
        }
        if (v.contains("geometry")) {
            const auto& g = v.at("geometry");
            if (g.contains("compactification")) {
                const auto& c = g.at("compactification");
                rec.compactification = VarietyRecord::Compactification{
                    c.at("closure").get<std::string>(),
                    parse_class_expr(c.at("boundary").get<std::string>())};
            }
            if (g.contains("stratification"))
                for (const auto& s : g.at("stratification"))
                    rec.stratification.push_back(parse_class_expr(s.get<std::string>()));
        }
        ws.db.add(std::move(rec));
    }

    for (const auto& b : j.value("blowups", json::array())) {
        BlowupDecl d;
        d.bl = b.at("bl").get<std::string>();
        d.ex = b.at("ex").get<std::string>();
        d.base = b.at("base").get<std::string>();
        d.center = b.at("center").get<std::string>();
        d.codim = b.value("codim", 2);
        ws.blowups.push_back(std::move(d));
    }

    for (auto& f : define_builtin_families(ws.db)) ws.families[f.name] = std::move(f);

    for (const auto& fj : j.value("families", json::array())) {
        InvariantFamily f;
        f.name = fj.at("name").get<std::string>();
        auto type = fj.at("type");
        f.type = {type.at(0).get<long>(), type.at(1).get<long>()};
        f.kind = parseKind(fj.at("kind").get<std::string>());
        const json values = fj.value("values", json::object());
        for (auto it = values.begin(); it != values.end(); ++it) {
            if (f.kind == InvariantFamily::Kind::BipolyValued)
                f.polys[it.key()] = parse_bipoly(it.value().get<std::string>());
            else
                f.tables[it.key()] = parseTable(it.value());
        }
        // Merge record-side data declared under this family's name.
        for (const auto& [rname, rec] : ws.db.records()) {
            if (f.kind == InvariantFamily::Kind::IntegerGraded) {
                auto t = rec->tables.find(f.name);
                if (t != rec->tables.end() && !f.tables.count(rname)) f.tables[rname] = t->second;
            } else {
                auto p = rec->polys.find(f.name);
                if (p != rec->polys.end() && !f.polys.count(rname)) f.polys[rname] = p->second;
            }
        }
        ws.families[f.name] = std::move(f);
    }

    for (const auto& [name, fam] : ws.families) validate_family(fam, ws.db, ws.blowups);
    return ws;
}

Workspace load_workspace_file(const std::string& path) { return load_workspace(read_json_file(path)); }

Fan load_fan(const json& j) {
    Fan f;
    f.rank = j.at("rank").get<long>();
    for (const auto& ray : j.at("rays")) {
        lattice::Vec v;
        for (const auto& c : ray) v.push_back(Int(c.get<long>()));
        f.rays.push_back(std::move(v));
    }
    for (const auto& cone : j.at("cones")) {
        ConeKey key;
        for (const auto& i : cone) key.insert(i.get<int>());
        f.cones.push_back(std::move(key));
    }
    f.complete = j.value("complete", false);
    return fan_validate(std::move(f));
}

Fan load_fan_file(const std::string& path) { return load_fan(read_json_file(path)); }

SupportFunction load_support(const json& fanJson, const Fan& validated) {
    if (!fanJson.contains("support") || fanJson.at("support").is_string()) {
        if (fanJson.contains("support") &&
            fanJson.at("support").get<std::string>() != "qgorenstein")
            throw Error("support must be \"qgorenstein\" or a {coneIndex: coefficients} object");
        return support_from_qgorenstein(validated);
    }
    // Explicit functionals keyed by index into the input "cones" array.
    // Input rays may have been normalized, so match them by vector.
    const auto& inputRays = fanJson.at("rays");
    auto canonicalIndex = [&](int inputIdx) {
        lattice::Vec v;
        for (const auto& c : inputRays.at(inputIdx)) v.push_back(Int(c.get<long>()));
        Int g = 0;
        for (const auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g > 1)
            for (auto& c : v) c /= g;
        for (std::size_t i = 0; i < validated.rays.size(); ++i)
            if (validated.rays[i] == v) return static_cast<int>(i);
        throw Error("support references a ray missing from the validated fan");
    };
    SupportFunction s;
    const auto& cones = fanJson.at("cones");
    for (auto it = fanJson.at("support").begin(); it != fanJson.at("support").end(); ++it) {
        int coneIdx = std::stoi(it.key());
        ConeKey key;
        for (const auto& i : cones.at(coneIdx)) key.insert(canonicalIndex(i.get<int>()));
        lattice::QVec fn;
        for (const auto& c : it.value()) fn.push_back(parseRational(c));
        if (static_cast<long>(fn.size()) != validated.rank)
            throw Error("support functional has wrong dimension for cone " + it.key());
        for (int i : key)
            if (lattice::dot(fn, validated.rays[i]) != 1)
                throw NotQGorensteinError("support functional for cone " + it.key() +
                                          " is not 1 on its primitive rays");
        s.perCone[key] = std::move(fn);
    }
    return s;
}

SncResolution load_resolution(const json& j, const VarietyDb& db) {
    SncResolution s;
    const auto& ambient = j.at("ambient");
    s.ambient = eval_class_expr(parse_class_expr(ambient.at("class").get<std::string>()), db).asClass();
    s.dim = ambient.at("dim").get<long>();
    for (const auto& c : j.value("components", json::array())) {
        SncResolution::Component comp;
        comp.name = c.at("name").get<std::string>();
        comp.mult = parseRational(c.at("mult"));
        s.components.push_back(std::move(comp));
    }
    std::string kind = j.value("strataKind", "closed");
    if (kind == "closed")
        s.strataKind = SncResolution::StrataKind::Closed;
    else if (kind == "open")
        s.strataKind = SncResolution::StrataKind::Open;
    else
        throw Error("strataKind must be \"closed\" or \"open\"");
    for (auto it = j.at("strata").begin(); it != j.at("strata").end(); ++it) {
        unsigned mask = 0;
        const std::string& key = it.key();
        std::size_t pos = 0;
        while (pos < key.size()) {
            std::size_t comma = key.find(',', pos);
            if (comma == std::string::npos) comma = key.size();
            std::string part = key.substr(pos, comma - pos);
            if (!part.empty()) {
                int idx = std::stoi(part);
                if (idx < 1 || static_cast<std::size_t>(idx) > s.components.size())
                    throw Error("stratum key '" + key + "' references component " + part);
                mask |= 1u << (idx - 1);
            }
            pos = comma + 1;
        }
        s.strata[mask] = eval_class_expr(parse_class_expr(it.value().get<std::string>()), db).asClass();
    }
    validate_resolution(s);
    return s;
}

SncResolution load_resolution_file(const std::string& path, const VarietyDb& db) {
    return load_resolution(read_json_file(path), db);
}

}  // namespace motivic
