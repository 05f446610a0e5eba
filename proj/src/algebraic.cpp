#include "reebarr/algebraic.h"

#include "reebarr/rng.h"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace reebarr {

namespace {

bool circles_meet(const std::vector<DoublePoint>& dps, std::size_t i, std::size_t j) {
    for (const DoublePoint& d : dps)
        if ((d.i1 == i && d.i2 == j) || (d.i1 == j && d.i2 == i)) return true;
    return false;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            r[e] += ca * cb;
        }
    for (auto it = r.begin(); it != r.end();) it = it->second == 0.0 ? r.erase(it) : std::next(it);
    return r;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Labeling default_labeling(const Arrangement& arr) {
    const auto dps = double_points(arr);
    Labeling lab;
    lab.m.assign(arr.size(), 0);
    std::size_t used = 0;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::size_t c = 0;
        for (;; ++c) {
            bool clash = false;
            for (std::size_t j = 0; j < i && !clash; ++j) clash = lab.m[j] == c && circles_meet(dps, i, j);
            if (!clash) break;
        }
        lab.m[i] = c;
        used = std::max(used, c + 1);
    }
    lab.m0.assign(used, 0);
    return lab;
}

void check_labeling(const Arrangement& arr, const Labeling& lab) {
    if (lab.m.size() != arr.size()) throw Error(ErrorCode::LabelingInvalid, "labeling must cover every circle");
    std::vector<bool> hit(lab.m0.size(), false);
    for (std::size_t l : lab.m) {
        if (l >= lab.m0.size()) throw Error(ErrorCode::LabelingInvalid, "label out of range");
        hit[l] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
        throw Error(ErrorCode::LabelingInvalid, "labeling is not surjective");
    for (int v : lab.m0)
        if (v < 0) throw Error(ErrorCode::LabelingInvalid, "multiplicity must be nonnegative");
    for (const DoublePoint& d : double_points(arr))
        if (lab.m[d.i1] == lab.m[d.i2])
            throw Error(ErrorCode::LabelingInvalid, "circles " + std::to_string(d.i1) + " and " + std::to_string(d.i2) +
                                                        " meet in the closure but share a label");
}

double evaluate(const Polynomial& p, const std::vector<double>& v) {
    double s = 0.0;
    for (const auto& [e, c] : p) {
        double t = c;
        for (std::size_t k = 0; k < e.size(); ++k)
            for (int i = 0; i < e[k]; ++i) t *= v[k];
        s += t;
    }
    return s;
}

std::vector<double> gradient(const Polynomial& p, const std::vector<double>& v) {
    std::vector<double> g(v.size(), 0.0);
    for (const auto& [e, c] : p)
        for (std::size_t d = 0; d < e.size(); ++d) {
            if (e[d] == 0) continue;
            double t = c * e[d];
            for (std::size_t k = 0; k < e.size(); ++k) {
                const int pw = k == d ? e[k] - 1 : e[k];
                for (int i = 0; i < pw; ++i) t *= v[k];
            }
            g[d] += t;
        }
    return g;
}

AlgebraicModel emit_model(const Arrangement& arr, const Labeling& lab) {
    std::vector<int> signs;
    for (const ArrCircle& c : arr.circles()) signs.push_back(c.side == Side::Inside ? -1 : 1);
    return emit_model_with_signs(arr, lab, signs);
}

AlgebraicModel emit_model_with_signs(const Arrangement& arr, const Labeling& lab, const std::vector<int>& signs) {
    check_labeling(arr, lab);
    AlgebraicModel mdl;
    mdl.labeling = lab;
    mdl.sign_vector = signs;
    mdl.variables = {"x1", "x2"};
    std::vector<std::size_t> block_start;
    for (std::size_t a = 0; a < lab.m0.size(); ++a) {
        block_start.push_back(mdl.variables.size());
        for (int k = 0; k <= lab.m0[a]; ++k)
            mdl.variables.push_back("y" + std::to_string(a) + "_" + std::to_string(k));
    }
    const std::size_t n = mdl.variables.size();
    mdl.ambient_dim = n;
    mdl.model_dim = n - lab.m0.size();

    auto mono = [&](std::initializer_list<std::pair<std::size_t, int>> powers) {
        std::vector<int> e(n, 0);
        for (auto [k, pw] : powers) e[k] = pw;
        return e;
    };
    for (std::size_t a = 0; a < lab.m0.size(); ++a) {
        Polynomial prod{{mono({}), 1.0}};
        for (std::size_t j = 0; j < arr.size(); ++j) {
            if (lab.m[j] != a) continue;
            const Circle& c = arr[j].circle;
            const double s = signs[j];
            Polynomial f{{mono({{0, 2}}), s},
                         {mono({{1, 2}}), s},
                         {mono({{0, 1}}), -2.0 * c.center.x * s},
                         {mono({{1, 1}}), -2.0 * c.center.y * s},
                         {mono({}), (dot(c.center, c.center) - c.radius * c.radius) * s}};
            for (auto it = f.begin(); it != f.end();) it = it->second == 0.0 ? f.erase(it) : std::next(it);
            prod = multiply(prod, f);
        }
        for (int k = 0; k <= lab.m0[a]; ++k) prod[mono({{block_start[a] + static_cast<std::size_t>(k), 2}})] -= 1.0;
        mdl.equations.push_back(std::move(prod));
    }
    return mdl;
}

std::string AlgebraicModel::text() const {
    std::ostringstream os;
    os << "variables: ";
    for (std::size_t i = 0; i < variables.size(); ++i) os << (i ? ", " : "") << variables[i];
    os << "\nambient_dim: " << ambient_dim << "\nmodel_dim: " << model_dim << '\n';
    for (std::size_t a = 0; a < equations.size(); ++a) {
        os << "F" << a << " =";
        bool first = true;
        // highest total degree first
        std::vector<std::pair<std::vector<int>, double>> terms(equations[a].begin(), equations[a].end());
        std::stable_sort(terms.begin(), terms.end(), [](const auto& l, const auto& r) {
            int dl = 0, dr = 0;
            for (int v : l.first) dl += v;
            for (int v : r.first) dr += v;
            return dl > dr;
        });
        for (const auto& [e, c] : terms) {
            os << (c < 0 ? " - " : (first ? " " : " + ")) << fmt(std::abs(c));
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                os << '*' << variables[k];
                if (e[k] > 1) os << '^' << e[k];
            }
            first = false;
        }
        os << " = 0\n";
    }
    os << "projection: (x1, x2, y...) -> (x1, x2)\n";
    return os.str();
}

std::string AlgebraicModel::to_json() const {
    nlohmann::ordered_json j;
    j["variables"] = variables;
    j["ambient_dim"] = ambient_dim;
    j["model_dim"] = model_dim;
    j["sign_vector"] = sign_vector;
    j["labels"] = labeling.m;
    j["m0"] = labeling.m0;
    auto eqs = nlohmann::ordered_json::array();
    for (std::size_t a = 0; a < equations.size(); ++a) {
        nlohmann::ordered_json e;
        e["label"] = a;
        auto terms = nlohmann::ordered_json::array();
        for (const auto& [ex, c] : equations[a]) terms.push_back({{"exp", ex}, {"coef", c}});
        e["terms"] = terms;
        eqs.push_back(e);
    }
    j["equations"] = eqs;
    return j.dump();
}

std::vector<Polynomial> parse_model_equations(const std::string& json_text) {
    std::vector<Polynomial> out;
    try {
        const auto j = nlohmann::json::parse(json_text);
        for (const auto& e : j.at("equations")) {
            Polynomial p;
            for (const auto& t : e.at("terms")) p[t.at("exp").get<std::vector<int>>()] = t.at("coef").get<double>();
            out.push_back(std::move(p));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorCode::ParseError, std::string("model json: ") + ex.what());
    }
    return out;
}

namespace {

// Rank of the rows by modified Gram-Schmidt.
std::size_t rank_of(std::vector<std::vector<double>> rows) {
    std::size_t rank = 0;
    std::vector<std::vector<double>> basis;
    for (auto& r : rows) {
        const double n0 = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
        for (const auto& b : basis) {
            const double d = std::inner_product(r.begin(), r.end(), b.begin(), 0.0);
            for (std::size_t k = 0; k < r.size(); ++k) r[k] -= d * b[k];
        }
        const double n = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
        if (n0 > 0 && n > 1e-9 * n0) {
            for (double& v : r) v /= n;
            basis.push_back(r);
            ++rank;
        }
    }
    return rank;
}

}  // namespace

SpotCheckReport spot_check_model(const AlgebraicModel& model, const Arrangement& arr, std::size_t n_samples,
                                 std::uint64_t seed) {
    SpotCheckReport rep;
    Rng rng(seed);
    auto box = arr.bbox();
    const double px = 0.1 * (box[2] - box[0]), py = 0.1 * (box[3] - box[1]);
    const double margin = arr.tolerances().side_margin;
    const std::size_t labels = model.equations.size();

    // y blocks: first variable index of each label block
    std::vector<std::size_t> block(labels, 0);
    for (std::size_t a = 0, k = 2; a < labels; ++a) {
        block[a] = k;
        k += static_cast<std::size_t>(model.labeling.m0[a]) + 1;
    }

    auto violation = [&](const std::string& msg) {
        ++rep.violation_count;
        if (rep.violations.size() < 10) rep.violations.push_back(msg);
    };

    for (std::size_t s = 0; s < n_samples; ++s) {
        const Point p{rng.uniform(box[0] - px, box[2] + px), rng.uniform(box[1] - py, box[3] + py)};
        std::vector<double> v(model.ambient_dim, 0.0);
        v[0] = p.x;
        v[1] = p.y;
        const Membership m = arr.contains(p);
        std::vector<double> vals(labels);
        for (std::size_t a = 0; a < labels; ++a) vals[a] = evaluate(model.equations[a], v);
        char where[96];
        std::snprintf(where, sizeof(where), "(%.6g, %.6g)", p.x, p.y);

        if (m.kind == MemberKind::Interior) {
            ++rep.interior_samples;
            bool lifts = true;
            for (std::size_t a = 0; a < labels; ++a)
                if (!(vals[a] > 0)) {
                    lifts = false;
                    violation(std::string("interior point ") + where + " does not lift for label " + std::to_string(a));
                }
            if (!lifts) continue;
            for (std::size_t a = 0; a < labels; ++a) v[block[a]] = std::sqrt(vals[a]);
            std::vector<std::vector<double>> jac;
            for (std::size_t a = 0; a < labels; ++a) {
                if (std::abs(evaluate(model.equations[a], v)) > 1e-9 * (1.0 + std::abs(vals[a])))
                    violation(std::string("lift at ") + where + " misses equation " + std::to_string(a));
                jac.push_back(gradient(model.equations[a], v));
            }
            if (rank_of(jac) != labels) violation(std::string("singular Jacobian at ") + where);
        } else if (m.kind == MemberKind::Exterior) {
            std::size_t violated = 0;
            for (const ArrCircle& c : arr.circles()) violated += c.region_dist(p) > margin ? 1 : 0;
            if (violated != 1) continue;
            ++rep.exterior_samples;
            bool some_negative = false;
            for (double val : vals) some_negative = some_negative || val < 0;
            if (!some_negative) violation(std::string("exterior point ") + where + " lifts");
        }
    }
    return rep;
}

}  // namespace reebarr
