#include "gencvx/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "gencvx/errors.hpp"
#include "gencvx/fixtures.hpp"
#include "gencvx/parallel.hpp"

namespace gencvx {
namespace {

using nlohmann::json;

constexpr const char* kSchemaPath = "docs/report.schema.json";

int default_grid_density(int dimension) {
    switch (dimension) {
    case 1: return 41;
    case 2: return 9;
    default: return 5;
    }
}

std::shared_ptr<const FunctionModel> resolve_model(const AnalysisConfig& c) {
    if (!c.fixture.empty()) return fixture_model(c.fixture);
    FunctionSpec spec;
    spec.name = c.name;
    spec.dimension = c.dimension;
    try {
        spec.value = Expr::parse(c.value_source);
        for (const auto& g : c.gradient_sources) spec.gradient.push_back(Expr::parse(g));
    } catch (const ParseError&) {
        throw;
    }
    spec.domain_box = c.domain_box;
    spec.grad_lipschitz = c.grad_lipschitz;
    return std::make_shared<const FunctionModel>(std::move(spec));
}

double parse_lambda(const std::string& context) {
    const std::string prefix = "lambda=";
    const std::size_t at = context.find(prefix);
    if (at == std::string::npos) return -1.0;
    return std::strtod(context.c_str() + at + prefix.size(), nullptr);
}

// Definition-level replay of an oracle witness; used before declaring a
// contradiction so estimator noise cannot masquerade as one.
bool replay_oracle_witness(const FunctionModel& f, OracleProperty prop, const Witness& w,
                           const OracleParams& p) {
    try {
        const Vec& x = w.x;
        const Vec y = axpy(1.0, w.u, x);  // x + u
        switch (prop) {
        case OracleProperty::Quasiconvex: {
            const double lambda = parse_lambda(w.context);
            if (lambda < 0.0) return false;
            Vec z(x.size());
            for (std::size_t d = 0; d < x.size(); ++d)
                z[d] = (1.0 - lambda) * x[d] + lambda * y[d];
            const double vmax = std::max(f.value_at(x), f.value_at(y));
            return f.value_at(z) > vmax + p.eps_strict * (1.0 + std::fabs(vmax));
        }
        case OracleProperty::StrictQuasiconvex: {
            const double lambda = parse_lambda(w.context);
            if (lambda < 0.0) return false;
            Vec z(x.size());
            for (std::size_t d = 0; d < x.size(); ++d)
                z[d] = (1.0 - lambda) * x[d] + lambda * y[d];
            const double vmax = std::max(f.value_at(x), f.value_at(y));
            double slack = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::fabs(vmax));
            if (f.spec().value.uses_integral()) slack += 4.0 * f.quadrature_tolerance();
            return f.value_at(z) >= vmax - slack;
        }
        case OracleProperty::Pseudoconvex: {
            const double fx = f.value_at(x);
            const double fy = f.value_at(y);
            if (!(fx > fy + p.eps_strict * (1.0 + std::max(std::fabs(fx), std::fabs(fy)))))
                return false;
            Vec g = f.gradient_at(x);
            if (norm2(g) <= p.eps_crit) g.assign(g.size(), 0.0);
            return dot(g, w.u) >= -p.eps_strict * norm2(g) * norm2(w.u);
        }
        case OracleProperty::StrictPseudoconvex: {
            const double fx = f.value_at(x);
            const double fy = f.value_at(y);
            double slack = 64.0 * std::numeric_limits<double>::epsilon() *
                           (1.0 + std::max(std::fabs(fx), std::fabs(fy)));
            if (f.spec().value.uses_integral()) slack += 4.0 * f.quadrature_tolerance();
            if (!(dist2(x, y) > p.eps_sep && fx >= fy - slack)) return false;
            Vec g = f.gradient_at(x);
            if (norm2(g) <= p.eps_crit) g.assign(g.size(), 0.0);
            return dot(g, w.u) >= -p.eps_strict * norm2(g) * norm2(w.u);
        }
        }
    } catch (const std::exception&) {
        return false;
    }
    return false;
}

const OracleVerdict* find_oracle(const std::vector<OracleVerdict>& oracles, OracleProperty p) {
    for (const auto& o : oracles)
        if (o.property == p) return &o;
    return nullptr;
}

const ConditionVerdict* find_condition(const std::vector<ConditionVerdict>& conds, ConditionId id) {
    for (const auto& c : conds)
        if (c.condition_id == id) return &c;
    return nullptr;
}

// ------------------------------------------------------------------ json ----

json vec_to_json(const Vec& v) {
    json a = json::array();
    for (const double x : v) a.push_back(x);
    return a;
}

json witness_to_json(const Witness& w) {
    json j;
    j["x"] = vec_to_json(w.x);
    j["u"] = vec_to_json(w.u);
    if (w.z) j["z"] = vec_to_json(*w.z);
    j["inner_product"] = w.inner_product;
    j["kind"] = witness_kind_name(w.kind);
    j["context"] = w.context;
    return j;
}

json estimate_to_json(const SetEstimate& e) {
    json j;
    json cloud = json::array();
    for (const auto& p : e.cloud) cloud.push_back(vec_to_json(p));
    j["cloud"] = cloud;
    if (e.hull_1d) j["hull_1d"] = json::array({(*e.hull_1d)[0], (*e.hull_1d)[1]});
    json fre = json::array();
    for (const auto& p : e.frechet_part) fre.push_back(vec_to_json(p));
    j["frechet_part"] = fre;
    j["is_certified_empty"] = e.is_certified_empty;
    j["radius_schedule"] = vec_to_json(e.radius_schedule);
    return j;
}

json report_to_json(const AnalysisReport& r) {
    json j;
    j["schema_version"] = r.schema_version;

    json fn;
    fn["name"] = r.function_name;
    fn["dimension"] = r.dimension;
    json box = json::array();
    for (const auto& iv : r.domain_box) box.push_back(json::array({iv[0], iv[1]}));
    fn["domain_box"] = box;
    fn["grad_lipschitz"] = r.grad_lipschitz;
    if (!r.config.fixture.empty()) fn["fixture"] = r.config.fixture;
    if (!r.config.value_source.empty()) fn["value"] = r.config.value_source;
    if (!r.config.gradient_sources.empty()) {
        json g = json::array();
        for (const auto& s : r.config.gradient_sources) g.push_back(s);
        fn["gradient"] = g;
    }
    j["function"] = fn;

    json cfg;
    cfg["seed"] = r.config.seed;
    cfg["grid_density"] = r.config.grid_density;
    cfg["pair_count"] = r.config.pair_count;
    cfg["direction_count"] = r.config.direction_count;
    cfg["lambda_grid"] = r.config.lambda_grid;
    json modes = json::array();
    for (const Mode m : r.config.modes) modes.push_back(mode_name(m));
    cfg["modes"] = modes;
    if (r.config.eps_strict) cfg["eps_strict"] = *r.config.eps_strict;
    if (r.config.eps_set) cfg["eps_set"] = *r.config.eps_set;
    if (r.config.eps_memb) cfg["eps_memb"] = *r.config.eps_memb;
    if (r.config.eps_crit) cfg["eps_crit"] = *r.config.eps_crit;
    j["config"] = cfg;

    json conds = json::array();
    for (const auto& c : r.conditions) {
        json cj;
        cj["condition_id"] = condition_id_name(c.condition_id);
        cj["status"] = check_status_name(c.status);
        cj["points_checked"] = c.points_checked;
        cj["directions_per_point"] = c.directions_per_point;
        if (c.witness) cj["witness"] = witness_to_json(*c.witness);
        if (!c.note.empty()) cj["note"] = c.note;
        if (!c.implied_classification.empty())
            cj["implied_classification"] = c.implied_classification;
        conds.push_back(cj);
    }
    j["conditions"] = conds;

    json oracles = json::array();
    for (const auto& o : r.oracles) {
        json oj;
        oj["property"] = oracle_property_name(o.property);
        oj["status"] = oracle_status_name(o.status);
        oj["pairs_checked"] = o.pairs_checked;
        oj["lambda_grid"] = o.lambda_grid;
        if (o.witness) oj["witness"] = witness_to_json(*o.witness);
        oracles.push_back(oj);
    }
    j["oracles"] = oracles;

    if (r.first_order_check) {
        json oj;
        oj["status"] = oracle_status_name(r.first_order_check->status);
        oj["pairs_checked"] = r.first_order_check->pairs_checked;
        if (r.first_order_check->witness)
            oj["witness"] = witness_to_json(*r.first_order_check->witness);
        j["first_order_check"] = oj;
    }

    json mins = json::array();
    for (const auto& m : r.local_min) {
        json mj;
        mj["point"] = vec_to_json(m.point);
        mj["status"] = local_min_status_name(m.status);
        mins.push_back(mj);
    }
    j["local_min"] = mins;

    json cells = json::array();
    for (const auto& c : r.set_estimates) {
        json cj;
        cj["point"] = vec_to_json(c.x);
        cj["direction"] = vec_to_json(c.u);
        cj["mordukhovich"] = estimate_to_json(c.mordukhovich);
        cj["frechet"] = estimate_to_json(c.frechet);
        cells.push_back(cj);
    }
    j["set_estimates"] = cells;

    json cons = json::array();
    for (const auto& e : r.consistency) {
        json ej;
        ej["theorem"] = e.theorem;
        ej["status"] = consistency_status_name(e.status);
        ej["detail"] = e.detail;
        cons.push_back(ej);
    }
    j["consistency"] = cons;

    j["critical_points"] = r.critical_points;
    j["exit_status"] = r.exit_status;
    return j;
}

// -------------------------------------------------------------- markdown ----

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string vec_text(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += fmt17(v[i]);
    }
    return s + ")";
}

std::string witness_text(const Witness& w) {
    std::string s = "x=" + vec_text(w.x) + " u=" + vec_text(w.u);
    if (w.z) s += " z=" + vec_text(*w.z);
    s += " inner=" + fmt17(w.inner_product);
    if (!w.context.empty()) s += " [" + w.context + "]";
    return s;
}

std::string report_to_markdown(const AnalysisReport& r) {
    std::ostringstream os;
    os << "# Analysis report: " << r.function_name << "\n\n";
    os << "- dimension: " << r.dimension << "\n";
    os << "- seed: " << r.config.seed << "\n";
    os << "- critical points: " << r.critical_points << "\n";
    os << "- exit status: " << r.exit_status << "\n\n";

    if (!r.conditions.empty()) {
        os << "## Second-order condition checks\n\n";
        os << "| condition | status | witness |\n|---|---|---|\n";
        for (const auto& c : r.conditions) {
            os << "| " << condition_id_name(c.condition_id) << " | " << check_status_name(c.status)
               << " | " << (c.witness ? witness_text(*c.witness) : "-") << " |\n";
        }
        os << "\n";
        for (const auto& c : r.conditions)
            if (!c.note.empty())
                os << "Note (" << condition_id_name(c.condition_id) << "): " << c.note << "\n\n";
    }

    if (!r.oracles.empty()) {
        os << "## Definition-level oracles\n\n";
        os << "| property | status | witness |\n|---|---|---|\n";
        for (const auto& o : r.oracles) {
            os << "| " << oracle_property_name(o.property) << " | " << oracle_status_name(o.status)
               << " | " << (o.witness ? witness_text(*o.witness) : "-") << " |\n";
        }
        os << "\n";
    }
    if (r.first_order_check) {
        os << "First-order pair scan: " << oracle_status_name(r.first_order_check->status);
        if (r.first_order_check->witness)
            os << " with " << witness_text(*r.first_order_check->witness);
        os << "\n\n";
    }

    if (!r.local_min.empty()) {
        os << "## Critical points\n\n";
        for (const auto& m : r.local_min)
            os << "- " << vec_text(m.point) << ": " << local_min_status_name(m.status) << "\n";
        os << "\n";
    }

    if (!r.set_estimates.empty()) {
        os << "## Second-order set estimates\n\n";
        for (const auto& c : r.set_estimates) {
            os << "- x=" << vec_text(c.x) << " u=" << vec_text(c.u) << ": limiting ";
            if (c.mordukhovich.hull_1d) {
                os << "hull [" << fmt17((*c.mordukhovich.hull_1d)[0]) << ", "
                   << fmt17((*c.mordukhovich.hull_1d)[1]) << "]";
            } else {
                os << c.mordukhovich.cloud.size() << " cluster(s)";
            }
            os << "; frechet ";
            if (c.frechet.is_certified_empty) {
                os << "certified empty";
            } else if (c.frechet.hull_1d) {
                os << "hull [" << fmt17((*c.frechet.hull_1d)[0]) << ", "
                   << fmt17((*c.frechet.hull_1d)[1]) << "]";
            } else {
                os << c.frechet.frechet_part.size() << " verified point(s)";
            }
            os << "\n";
        }
        os << "\n";
    }

    if (!r.consistency.empty()) {
        os << "## Consistency matrix\n\n";
        os << "| implication | status | detail |\n|---|---|---|\n";
        for (const auto& e : r.consistency)
            os << "| " << e.theorem << " | " << consistency_status_name(e.status) << " | "
               << e.detail << " |\n";
        os << "\n";
    }
    return os.str();
}

} // namespace

const char* consistency_status_name(ConsistencyStatus s) {
    switch (s) {
    case ConsistencyStatus::Consistent: return "CONSISTENT";
    case ConsistencyStatus::PaperContradiction: return "PAPER_CONTRADICTION";
    case ConsistencyStatus::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

const char* report_schema_path() { return kSchemaPath; }

AnalysisReport run_analysis(const AnalysisConfig& config_in) {
    AnalysisConfig config = config_in;
    config.validate();

    std::shared_ptr<const FunctionModel> model = resolve_model(config);
    const FunctionModel& f = *model;
    const int n = f.dimension();
    if (config.grid_density <= 0) config.grid_density = default_grid_density(n);
    if (config.direction_count <= 0) config.direction_count = std::max(8, 4 * n);

    // gradient consistency pre-check
    const GradientCheckResult gc = f.check_gradient_consistency(200, Rng::substream(config.seed, 1));
    if (!gc.ok) {
        std::ostringstream os;
        os << "gradient validation failed at " << vec_text(gc.worst_point) << ": |fd - grad| = "
           << gc.worst_error << " > tol " << gc.worst_tolerance;
        throw GradientMismatch(os.str());
    }

    AnalysisReport report;
    report.config = config;
    report.function_name = f.spec().name;
    report.dimension = n;
    report.domain_box = f.box();
    report.grad_lipschitz = f.grad_lipschitz();

    const bool want_necessary = config.has_mode(Mode::Necessary);
    const bool want_sufficient = config.has_mode(Mode::Sufficient);
    const bool want_oracles = config.has_mode(Mode::Oracles);
    const bool want_subdiff = config.has_mode(Mode::SubdiffOnly);
    const bool want_conditions = want_necessary || want_sufficient;

    std::vector<ScanPoint> points;
    std::vector<Vec> criticals;
    if (want_conditions || want_oracles || want_subdiff) {
        ScanParams sp;
        sp.grid_density = config.grid_density;
        sp.random_count = 2 * config.grid_density;
        sp.seed = Rng::substream(config.seed, 2);
        sp.eps_crit = config.eps_crit.value_or(1e-6);
        points = scan_points(f, sp);
        for (const auto& p : points)
            if (p.is_critical) criticals.push_back(p.x);
        report.critical_points = static_cast<long>(criticals.size());
    }

    ConditionsResult conditions;
    if (want_conditions) {
        ConditionParams cp;
        cp.direction_count = config.direction_count;
        cp.seed = Rng::substream(config.seed, 3);
        cp.eps_crit = config.eps_crit.value_or(1e-6);
        if (config.eps_strict) cp.eps_strict_rel = *config.eps_strict;
        conditions = evaluate_conditions(f, points, cp);
        for (const auto& v : conditions.verdicts) {
            const bool necessary = v.condition_id == ConditionId::NecQc32 ||
                                   v.condition_id == ConditionId::NecPc34;
            if ((necessary && want_necessary) || (!necessary && want_sufficient))
                report.conditions.push_back(v);
        }
        report.set_estimates = conditions.cells;
    } else if (want_subdiff) {
        ConditionParams cp;
        cp.direction_count = config.direction_count;
        cp.seed = Rng::substream(config.seed, 3);
        cp.eps_crit = config.eps_crit.value_or(1e-6);
        std::vector<ScanPoint> crit_points;
        for (const auto& p : points)
            if (p.is_critical) crit_points.push_back(p);
        const ConditionsResult sub = evaluate_conditions(f, crit_points, cp);
        report.set_estimates = sub.cells;
    }

    if (want_oracles) {
        OracleParams op;
        op.pair_count = config.pair_count;
        op.lambda_grid = config.lambda_grid;
        op.seed = Rng::substream(config.seed, 4);
        op.eps_strict = config.eps_strict.value_or(1e-7);
        op.eps_crit = config.eps_crit.value_or(1e-6);
        op.focus_points = criticals;

        // known counterexample pairs of bundled fixtures come first, so the
        // reported witness is the canonical one when a violation exists
        if (!config.fixture.empty()) {
            if (const Fixture* fx = find_fixture(config.fixture)) {
                for (const auto& w : fx->known_witnesses)
                    if (!w.u.empty() && norm2(w.u) > 0.0)
                        op.guided_pairs.emplace_back(w.x, axpy(1.0, w.u, w.x));
            }
        }

        // condition-check witnesses seed the definitional search: the oracle
        // still verifies the definition, it just starts where a violation is
        // most likely
        if (want_conditions) {
            for (const auto& v : conditions.verdicts) {
                if (v.status != CheckStatus::Fails || !v.witness) continue;
                const Witness& w = *v.witness;
                if (w.u.empty() || norm2(w.u) == 0.0) continue;
                const Vec ud = scaled(1.0 / norm2(w.u), w.u);
                for (const double s : {0.02, 0.05, 0.1, 0.25}) {
                    const double span = s * f.box_diameter();
                    op.guided_pairs.emplace_back(axpy(-span, ud, w.x), axpy(span, ud, w.x));
                    op.guided_pairs.emplace_back(w.x, axpy(span, ud, w.x));
                }
            }
        }

        report.oracles.resize(4);
        std::vector<OracleVerdict> slots(5);
        parallel_for(5, [&](std::size_t i) {
            switch (i) {
            case 0: slots[0] = quasiconvex_oracle(f, op); break;
            case 1: slots[1] = strict_quasiconvex_oracle(f, op); break;
            case 2: slots[2] = pseudoconvex_oracle(f, op); break;
            case 3: slots[3] = strict_pseudoconvex_oracle(f, op); break;
            case 4: slots[4] = crouzeix_first_order_check(f, op); break;
            }
        });
        report.oracles = {slots[0], slots[1], slots[2], slots[3]};
        report.first_order_check = slots[4];

        for (const auto& c : criticals) {
            LocalMinEntry e;
            e.point = c;
            e.status = local_min_check(f, c, Rng::substream(config.seed, 5),
                                       config.eps_strict.value_or(1e-7))
                           .status;
            report.local_min.push_back(std::move(e));
        }
    }

    // ------------------------------------------------- consistency matrix ----
    if (want_conditions && want_oracles) {
        ConditionParams cp;
        cp.direction_count = config.direction_count;
        cp.seed = Rng::substream(config.seed, 6);
        cp.eps_crit = config.eps_crit.value_or(1e-6);
        if (config.eps_strict) cp.eps_strict_rel = *config.eps_strict;
        OracleParams op;
        op.seed = Rng::substream(config.seed, 7);
        op.eps_strict = config.eps_strict.value_or(1e-7);
        op.eps_crit = config.eps_crit.value_or(1e-6);

        auto necessary_entry = [&](const char* name, ConditionId cid, OracleProperty prop) {
            ConsistencyEntry e;
            e.theorem = name;
            const ConditionVerdict* cv = find_condition(conditions.verdicts, cid);
            const OracleVerdict* ov = find_oracle(report.oracles, prop);
            if (cv == nullptr || ov == nullptr) {
                e.status = ConsistencyStatus::Inconclusive;
                e.detail = "check not evaluated";
            } else if (ov->status == OracleStatus::Violated) {
                e.status = ConsistencyStatus::Consistent;
                e.detail = "oracle found a definition violation; the necessary condition is not constrained";
            } else if (cv->status == CheckStatus::HoldsSampled) {
                e.status = ConsistencyStatus::Consistent;
                e.detail = "necessary condition holds on all sampled cells";
            } else if (cv->status == CheckStatus::Inconclusive) {
                e.status = ConsistencyStatus::Inconclusive;
                e.detail = "condition check inconclusive";
            } else {
                const bool replayed = cv->witness && replay_witness(f, cid, *cv->witness, cp);
                e.status = replayed ? ConsistencyStatus::PaperContradiction
                                    : ConsistencyStatus::Inconclusive;
                e.detail = replayed
                               ? "oracle-consistent function fails the necessary condition with a replayable witness"
                               : "condition failure did not replay; treating as estimator noise";
            }
            return e;
        };
        auto sufficient_entry = [&](const char* name, ConditionId cid, OracleProperty prop) {
            ConsistencyEntry e;
            e.theorem = name;
            const ConditionVerdict* cv = find_condition(conditions.verdicts, cid);
            const OracleVerdict* ov = find_oracle(report.oracles, prop);
            if (cv == nullptr || ov == nullptr) {
                e.status = ConsistencyStatus::Inconclusive;
                e.detail = "check not evaluated";
            } else if (cv->status != CheckStatus::HoldsSampled) {
                e.status = cv->status == CheckStatus::Inconclusive ? ConsistencyStatus::Inconclusive
                                                                   : ConsistencyStatus::Consistent;
                e.detail = cv->status == CheckStatus::Inconclusive
                               ? "condition check inconclusive"
                               : "sufficient condition fails; no conclusion implied";
            } else if (ov->status == OracleStatus::ConsistentSampled) {
                e.status = ConsistencyStatus::Consistent;
                e.detail = "sufficient condition holds and the oracle found no definition violation";
            } else {
                const bool replayed =
                    ov->witness && replay_oracle_witness(f, prop, *ov->witness, op);
                e.status = replayed ? ConsistencyStatus::PaperContradiction
                                    : ConsistencyStatus::Inconclusive;
                e.detail = replayed
                               ? "sufficient condition holds yet the concluded property has a replayable definition violation"
                               : "oracle violation did not replay; treating as sampling noise";
            }
            return e;
        };

        if (want_necessary) {
            report.consistency.push_back(
                necessary_entry("THM_3.2", ConditionId::NecQc32, OracleProperty::Quasiconvex));
            report.consistency.push_back(
                necessary_entry("THM_3.4", ConditionId::NecPc34, OracleProperty::Pseudoconvex));
        }
        if (want_sufficient) {
            report.consistency.push_back(sufficient_entry("THM_4.2", ConditionId::SufSpc42,
                                                          OracleProperty::StrictPseudoconvex));
            report.consistency.push_back(sufficient_entry("THM_4.4", ConditionId::SufSqc44,
                                                          OracleProperty::StrictQuasiconvex));
            report.consistency.push_back(sufficient_entry("THM_4.6", ConditionId::SufSpc46,
                                                          OracleProperty::StrictPseudoconvex));
            ConsistencyEntry variant;
            variant.theorem = "VARIANT_11";
            variant.status = ConsistencyStatus::Consistent;
            const ConditionVerdict* v11 = find_condition(conditions.verdicts, ConditionId::Variant11);
            const OracleVerdict* qc = find_oracle(report.oracles, OracleProperty::Quasiconvex);
            if (v11 != nullptr && qc != nullptr && v11->status == CheckStatus::HoldsSampled &&
                qc->status == OracleStatus::Violated) {
                variant.detail =
                    "existence form holds while quasiconvexity is violated; expected, the "
                    "variant is not a sufficient condition";
            } else {
                variant.detail = "diagnostic only; not a sufficient condition";
            }
            report.consistency.push_back(std::move(variant));
        }
    }

    int exit_status = 0;
    for (const auto& e : report.consistency) {
        if (e.status == ConsistencyStatus::Inconclusive) exit_status = std::max(exit_status, 2);
        if (e.status == ConsistencyStatus::PaperContradiction) exit_status = 3;
    }
    report.exit_status = exit_status;
    return report;
}

std::string emit(const AnalysisReport& report, const std::string& format) {
    if (format == "json") return report_to_json(report).dump(2) + "\n";
    if (format == "markdown") return report_to_markdown(report);
    throw ConfigError("unknown report format: " + format);
}

} // namespace gencvx
