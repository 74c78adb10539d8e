#include "motivic/cli.hpp"

#include <filesystem>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "motivic/classexpr.hpp"
#include "motivic/workspace.hpp"

namespace motivic {

using nlohmann::json;

namespace {

json polyJson(const BiPoly& p, long root) {
    json terms = json::array();
    for (const auto& [e, c] : p.coeffs())
        terms.push_back({{"p", e.first}, {"q", e.second}, {"c", c.get_str()}});
    json out{{"text", p.str(root)}, {"terms", terms}};
    if (root != 1) out["root"] = root;
    return out;
}

json rationalJson(const BiRational& r) {
    json out = polyJson(r.num(), r.root());
    out["text"] = r.str();
    if (!r.den().empty()) {
        json den = json::array();
        for (const auto& e : r.den()) den.push_back({{"p", e.first}, {"q", e.second}});
        out["denominator"] = den;
    }
    return out;
}

json kclassJson(const KClass& c) {
    json terms = json::array();
    for (const auto& t : c.terms())
        terms.push_back({{"generator", t.gen ? t.gen->name : "1"},
                         {"shift", t.shift},
                         {"coeff", t.coeff.get_str()}});
    json den = json::array();
    for (long m : c.den()) den.push_back(m);
    return {{"text", c.str()}, {"terms", terms}, {"denominator", den}};
}

struct Ctx {
    bool asJson = false;
    std::optional<std::string> dbPath;
    Workspace ws;
    bool wsLoaded = false;
    std::ostringstream out;
    int status = 0;

    void loadWs() {
        if (wsLoaded) return;
        if (dbPath) ws = load_workspace_file(*dbPath);
        wsLoaded = true;
    }

    const InvariantFamily& family(const std::string& name) {
        loadWs();
        auto it = ws.families.find(name);
        if (it != ws.families.end()) return it->second;
        if (name == "E") {
            // The stock E-polynomial family works standalone for toric
            // computations, which only need its type signature.
            static const InvariantFamily stockE{
                "E", {1, 1}, InvariantFamily::Kind::BipolyValued, {}, {}};
            return stockE;
        }
        throw Error("unknown invariant family '" + name + "' (is --db set?)");
    }

    void emit(const std::string& text, json payload) {
        if (asJson) {
            out << payload.dump(2) << "\n";
        } else {
            out << text << "\n";
        }
    }
};

void emitCheck(Ctx& ctx, const CheckReport& rep) {
    std::string residual = rep.residual.isZero() ? "0" : rep.residual.str();
    ctx.emit((rep.ok ? "ok\nresidual: " : "FAILED\nresidual: ") + residual,
             {{"ok", rep.ok}, {"residual", rationalJson(rep.residual)}});
    if (!rep.ok) ctx.status = 1;
}

// A check argument is a fan file, a resolution file, or a literal
// polynomial in u, v.
BiRational stringyFromArg(Ctx& ctx, const std::string& arg, const InvariantFamily& fam,
                          long* dimOut) {
    if (std::filesystem::exists(arg)) {
        json j = read_json_file(arg);
        if (j.contains("rays")) {
            Fan fan = load_fan(j);
            if (dimOut) *dimOut = fan.rank;
            return toric_stringy_e(fan, load_support(j, fan), fam.type, ctx.ws.config.detLimit);
        }
        if (j.contains("ambient")) {
            ctx.loadWs();
            SncResolution res = load_resolution(j, ctx.ws.db);
            if (dimOut) *dimOut = res.dim;
            return stringy_phi_snc(fam, res);
        }
        throw Error("'" + arg + "' is neither a fan nor a resolution file");
    }
    return BiRational(parse_bipoly(arg));
}

int dispatch(const std::vector<std::string>& args, std::ostringstream& outBuf,
             std::ostringstream& errBuf) {
    CLI::App app{"Exact calculator for Grothendieck-group classes, stringy functions and toric "
                 "stringy E-functions"};
    app.name("motivic");

    Ctx ctx;
    app.add_flag("--json", ctx.asJson, "machine-readable output");
    std::string dbPath;
    auto* dbOpt = app.add_option("--db", dbPath, "workspace JSON with variety records and families");
    long detLimit = -1;
    app.add_option("--det-limit", detLimit, "box-enumeration limit for cone determinants");
    long order = -1;
    app.add_option("--order", order, "series expansion order");
    long precision = -1;
    app.add_option("--precision", precision, "filtration level for modular equality checks");

    app.require_subcommand(1);
    app.fallthrough();

    // ---- toric ----
    auto* toric = app.add_subcommand("toric", "fan-based computations");
    toric->require_subcommand(1);
    toric->fallthrough();
    std::string fanPath, family = "E";
    long hodgeP = 0, hodgeQ = 0;

    auto* epoly = toric->add_subcommand("e-poly", "E-polynomial from the d-vector");
    epoly->fallthrough();
    epoly->add_option("fan", fanPath, "fan JSON file")->required();

    auto* stringy = toric->add_subcommand("stringy", "stringy E-function from lattice sums");
    stringy->fallthrough();
    stringy->add_option("fan", fanPath, "fan JSON file")->required();
    stringy->add_option("--family", family, "invariant family (sets the substitution monomial)");

    auto* hodge = toric->add_subcommand("hodge", "toric Hodge number h_{p,q}");
    hodge->fallthrough();
    hodge->add_option("fan", fanPath, "fan JSON file")->required();
    hodge->add_option("-p", hodgeP, "p index")->required();
    hodge->add_option("-q", hodgeQ, "q index")->required();

    // ---- snc ----
    auto* snc = app.add_subcommand("snc", "simple-normal-crossing resolution engine");
    snc->require_subcommand(1);
    snc->fallthrough();
    std::string resPath;

    auto* integral = snc->add_subcommand("integral", "motivic integral of the resolution");
    integral->fallthrough();
    integral->add_option("resolution", resPath, "resolution JSON file")->required();

    auto* sncStringy = snc->add_subcommand("stringy", "stringy phi-function of the resolution");
    sncStringy->fallthrough();
    sncStringy->add_option("resolution", resPath, "resolution JSON file")->required();
    sncStringy->add_option("--family", family, "invariant family");

    // ---- kclass ----
    auto* kclass = app.add_subcommand("kclass", "class expressions over the record database");
    kclass->require_subcommand(1);
    kclass->fallthrough();
    std::string exprText;
    long evalJ = 0, evalN = 0;

    auto* eval = kclass->add_subcommand("eval", "evaluate an invariant family on a class");
    eval->fallthrough();
    eval->add_option("expr", exprText, "class expression")->required();
    eval->add_option("--family", family, "integer-graded family")->required();
    eval->add_option("-j", evalJ, "first index")->required();
    eval->add_option("-n", evalN, "second index")->required();

    auto* rewrite = kclass->add_subcommand("rewrite", "rewrite over smooth projective generators");
    rewrite->fallthrough();
    rewrite->add_option("expr", exprText, "class expression")->required();

    // ---- check ----
    auto* check = app.add_subcommand("check", "verification reports (exit 1 on failure)");
    check->require_subcommand(1);
    check->fallthrough();
    std::string argA, argB;
    long mirrorN = 0;

    auto* symmetry = check->add_subcommand("symmetry", "stringy symmetry of a complete fan");
    symmetry->fallthrough();
    symmetry->add_option("fan", fanPath, "fan JSON file")->required();
    symmetry->add_option("--family", family, "invariant family");

    auto* resind = check->add_subcommand("resolution-independence",
                                         "two resolutions give one stringy function");
    resind->fallthrough();
    resind->add_option("res1", argA, "resolution JSON")->required();
    resind->add_option("res2", argB, "resolution JSON")->required();
    resind->add_option("--family", family, "invariant family");

    auto* keq = check->add_subcommand("k-equiv", "K-equivalence through a common resolution space");
    keq->fallthrough();
    keq->add_option("res1", argA, "resolution JSON")->required();
    keq->add_option("res2", argB, "resolution JSON")->required();
    std::vector<std::string> keqFamilies;
    keq->add_option("--family", keqFamilies, "families to compare stringy functions for");

    auto* mirror = check->add_subcommand("mirror", "mirror-pair stringy relation");
    mirror->fallthrough();
    mirror->add_option("phiV", argA, "fan/resolution file or polynomial")->required();
    mirror->add_option("phiW", argB, "fan/resolution file or polynomial")->required();
    mirror->add_option("-n", mirrorN, "dimension of the mirror pair")->required();
    mirror->add_option("--family", family, "invariant family");

    try {
        // CLI11's vector overload consumes arguments back to front.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream help;
        help << app.help();
        outBuf << help.str();
        return 0;
    } catch (const CLI::ParseError& e) {
        errBuf << e.what() << "\n";
        return 2;
    }

    try {
        ctx.dbPath = dbOpt->count() ? std::optional<std::string>(dbPath) : std::nullopt;
        if (detLimit >= 0) {
            ctx.loadWs();
            ctx.ws.config.detLimit = Int(detLimit);
        }
        if (order >= 0) {
            ctx.loadWs();
            ctx.ws.config.expansionOrder = order;
        }
        if (precision >= 0) {
            ctx.loadWs();
            ctx.ws.config.precision = precision;
        }

        if (epoly->parsed()) {
            Fan fan = load_fan_file(fanPath);
            BiPoly p = toric_epoly(fan);
            ctx.emit(p.str(), polyJson(p, 1));
        } else if (stringy->parsed()) {
            json j = read_json_file(fanPath);
            Fan fan = load_fan(j);
            const auto& fam = ctx.family(family);
            ctx.loadWs();
            BiRational r = toric_stringy_e(fan, load_support(j, fan), fam.type, ctx.ws.config.detLimit);
            ctx.emit(r.str(), rationalJson(r));
        } else if (hodge->parsed()) {
            Fan fan = load_fan_file(fanPath);
            Int h = toric_hodge(fan, hodgeP, hodgeQ);
            ctx.emit(h.get_str(), {{"value", h.get_str()}});
        } else if (integral->parsed()) {
            ctx.loadWs();
            SncResolution res = load_resolution_file(resPath, ctx.ws.db);
            KClass k = motivic_integral_snc(res);
            ctx.emit(k.str(), kclassJson(k));
        } else if (sncStringy->parsed()) {
            ctx.loadWs();
            SncResolution res = load_resolution_file(resPath, ctx.ws.db);
            BiRational r = stringy_phi_snc(ctx.family(family), res);
            ctx.emit(r.str(), rationalJson(r));
        } else if (eval->parsed()) {
            ctx.loadWs();
            KClass c = eval_class_expr(parse_class_expr(exprText), ctx.ws.db).asClass();
            Int v = evaluate(ctx.family(family), c, evalJ, evalN);
            ctx.emit(v.get_str(), {{"value", v.get_str()}});
        } else if (rewrite->parsed()) {
            ctx.loadWs();
            KClass c = bittner_rewrite(parse_class_expr(exprText), ctx.ws.db);
            ctx.emit(c.str(), kclassJson(c));
        } else if (symmetry->parsed()) {
            json j = read_json_file(fanPath);
            Fan fan = load_fan(j);
            const auto& fam = ctx.family(family);
            ctx.loadWs();
            emitCheck(ctx, toric_symmetry_check(fan, load_support(j, fan), fam,
                                                ctx.ws.config.detLimit));
        } else if (resind->parsed()) {
            ctx.loadWs();
            const auto& fam = ctx.family(family);
            SncResolution r1 = load_resolution_file(argA, ctx.ws.db);
            SncResolution r2 = load_resolution_file(argB, ctx.ws.db);
            emitCheck(ctx, resolution_independence_check(fam, r1, r2));
        } else if (keq->parsed()) {
            ctx.loadWs();
            SncResolution r1 = load_resolution_file(argA, ctx.ws.db);
            SncResolution r2 = load_resolution_file(argB, ctx.ws.db);
            std::vector<InvariantFamily> fams;
            for (const auto& name : keqFamilies) fams.push_back(ctx.family(name));
            auto rep = k_equivalence_check(fams, r1, r2);
            bool equal = rep.equal;
            if (ctx.ws.config.precision) {
                KClass a = motivic_integral_snc(r1), b = motivic_integral_snc(r2);
                equal = eq_mod_filtration(a, b, *ctx.ws.config.precision);
            }
            json famJson = json::object();
            std::ostringstream text;
            text << (equal ? "equal" : "NOT equal");
            for (const auto& [name, ok] : rep.perFamily) {
                famJson[name] = ok;
                text << "\n" << name << ": " << (ok ? "agree" : "disagree");
            }
            ctx.emit(text.str(), {{"equal", equal}, {"families", famJson}});
            if (!equal) ctx.status = 1;
        } else if (mirror->parsed()) {
            const auto& fam = ctx.family(family);
            BiRational phiV = stringyFromArg(ctx, argA, fam, nullptr);
            BiRational phiW = stringyFromArg(ctx, argB, fam, nullptr);
            emitCheck(ctx, mirror_check(fam, phiV, phiW, mirrorN));
        }
    } catch (const json::exception& e) {
        errBuf << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        errBuf << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        errBuf << "error: " << e.what() << "\n";
        return 2;
    }
    outBuf << ctx.out.str();
    return ctx.status;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
    CommandResult res;
    std::ostringstream out, err;
    try {
        res.status = dispatch(args, out, err);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        res.status = 2;
    }
    res.out = out.str();
    res.err = err.str();
    return res;
}

}  // namespace motivic
