#include "haarlane/problem.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace haarlane {

namespace {

struct RawEntry {
    std::string value;
    int line = 0;
};

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return {};
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

class Fields {
public:
    explicit Fields(std::string_view text) {
        std::istringstream stream{std::string(text)};
        std::string line;
        int line_no = 0;
        while (std::getline(stream, line)) {
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            if (trim(line).empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ProblemError("line " + std::to_string(line_no) +
                                   ": expected 'key = value'");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty() || value.empty()) {
                throw ProblemError("line " + std::to_string(line_no) +
                                   ": expected 'key = value'");
            }
            if (entries_.count(key)) {
                throw ProblemError("line " + std::to_string(line_no) + ": duplicate key '" +
                                   key + "'");
            }
            entries_[key] = RawEntry{value, line_no};
        }
    }

    const RawEntry& require(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) throw ProblemError("missing key '" + key + "'");
        used_.insert(it->first);
        return it->second;
    }

    const RawEntry* find(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return nullptr;
        used_.insert(it->first);
        return &it->second;
    }

    void reject_unused() const {
        for (const auto& [key, entry] : entries_) {
            if (!used_.count(key)) {
                throw ProblemError("line " + std::to_string(entry.line) + ": unknown key '" +
                                   key + "'");
            }
        }
    }

private:
    std::map<std::string, RawEntry> entries_;
    std::set<std::string> used_;
};

double constant_field(const std::string& key, const RawEntry& entry) {
    try {
        return eval_constant(entry.value);
    } catch (const std::runtime_error& err) {
        throw ProblemError("key '" + key + "' (line " + std::to_string(entry.line) +
                           "): " + err.what());
    }
}

ExprPtr expr_field(const std::string& key, const RawEntry& entry) {
    try {
        return parse(entry.value);
    } catch (const ParseError& err) {
        throw ProblemError("key '" + key + "' (line " + std::to_string(entry.line) +
                           "): " + err.what());
    }
}

InitialGuess guess_field(const RawEntry& entry) {
    // a comma-separated list is an explicit coefficient vector
    if (entry.value.find(',') == std::string::npos) {
        return constant_field("guess", entry);
    }
    std::vector<double> values;
    std::istringstream parts(entry.value);
    std::string part;
    while (std::getline(parts, part, ',')) {
        values.push_back(constant_field("guess", RawEntry{trim(part), entry.line}));
    }
    return values;
}

}  // namespace

std::pair<double, double> ProblemSpec::exact_at(double t) const {
    if (!has_exact()) throw ProblemError("problem '" + label + "' has no exact solution");
    const EvalPoint p{t, 0.0, 0.0};
    return {eval(exact_y, p), eval(exact_z, p)};
}

void ProblemSpec::validate() const {
    if (!f1 || !f2) throw ProblemError("missing nonlinearity f1 or f2");
    if (k1 < 0.0 || k2 < 0.0) throw ProblemError("singularity exponents k1, k2 must be >= 0");
    if (omega1 >= 1.0) throw ProblemError("omega1 must be < 1");
    if (omega2 >= 1.0) throw ProblemError("omega2 must be < 1");
    if (const auto* fp = std::get_if<FourPointConditions>(&bc)) {
        if (fp->v1 <= 0.0 || fp->v1 >= 1.0 || fp->v2 <= 0.0 || fp->v2 >= 1.0) {
            throw ProblemError("four-point abscissae v1, v2 must lie in (0,1)");
        }
        if (std::fabs(fp->denominator()) < 1e-12) {
            throw ProblemError("four-point conditions degenerate: n1*n2*v1*v2 = 1");
        }
    }
    if (const auto* vec = std::get_if<std::vector<double>>(&guess)) {
        if (vec->empty()) throw ProblemError("explicit guess vector is empty");
    }
}

ProblemSpec load_problem_text(std::string_view text) {
    Fields fields(text);
    ProblemSpec spec;
    spec.k1 = constant_field("k1", fields.require("k1"));
    spec.k2 = constant_field("k2", fields.require("k2"));
    spec.omega1 = constant_field("omega1", fields.require("omega1"));
    spec.omega2 = constant_field("omega2", fields.require("omega2"));
    spec.f1 = expr_field("f1", fields.require("f1"));
    spec.f2 = expr_field("f2", fields.require("f2"));

    const RawEntry& bc = fields.require("bc");
    if (bc.value == "ivp") {
        IvpConditions c;
        c.gamma1 = constant_field("gamma1", fields.require("gamma1"));
        c.gamma2 = constant_field("gamma2", fields.require("gamma2"));
        spec.bc = c;
    } else if (bc.value == "bvp") {
        BvpConditions c;
        c.delta1 = constant_field("delta1", fields.require("delta1"));
        c.delta2 = constant_field("delta2", fields.require("delta2"));
        spec.bc = c;
    } else if (bc.value == "fourpoint") {
        FourPointConditions c;
        c.n1 = constant_field("n1", fields.require("n1"));
        c.n2 = constant_field("n2", fields.require("n2"));
        c.v1 = constant_field("v1", fields.require("v1"));
        c.v2 = constant_field("v2", fields.require("v2"));
        spec.bc = c;
    } else {
        throw ProblemError("key 'bc' (line " + std::to_string(bc.line) +
                           "): expected ivp, bvp or fourpoint, got '" + bc.value + "'");
    }

    if (const RawEntry* g = fields.find("guess")) spec.guess = guess_field(*g);
    if (const RawEntry* l = fields.find("label")) spec.label = l->value;
    if (const RawEntry* e = fields.find("exact_y")) spec.exact_y = expr_field("exact_y", *e);
    if (const RawEntry* e = fields.find("exact_z")) spec.exact_z = expr_field("exact_z", *e);
    if ((spec.exact_y == nullptr) != (spec.exact_z == nullptr)) {
        throw ProblemError("exact_y and exact_z must be given together");
    }
    for (const ExprPtr& e : {spec.exact_y, spec.exact_z}) {
        if (e && (depends_on(e, Var::Y) || depends_on(e, Var::Z))) {
            throw ProblemError("exact solutions must be expressions in t only");
        }
    }
    fields.reject_unused();

    spec.validate();
    return spec;
}

ProblemSpec load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProblemError("cannot open problem file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    ProblemSpec spec = load_problem_text(buffer.str());
    if (spec.label.empty()) spec.label = path;
    return spec;
}

}  // namespace haarlane
