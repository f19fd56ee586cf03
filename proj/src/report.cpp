#include "orbitropy/scenario.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>

namespace orbitropy {

namespace {

std::string escape_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

// Minimal scanner over already-validated JSON text recording value start lines.
class Scanner {
public:
    Scanner(const std::string& t, std::map<std::string, int>& out) : t_(t), out_(out) {}

    void value(const std::string& ptr) {
        ws();
        out_[ptr] = line_;
        if (i_ >= t_.size()) return;
        char c = t_[i_];
        if (c == '{') {
            ++i_;
            ws();
            if (peek() == '}') {
                ++i_;
                return;
            }
            for (;;) {
                ws();
                std::string key = string();
                ws();
                ++i_;  // ':'
                value(ptr + "/" + escape_token(key));
                ws();
                if (peek() == ',') {
                    ++i_;
                    continue;
                }
                ++i_;  // '}'
                return;
            }
        }
        if (c == '[') {
            ++i_;
            ws();
            if (peek() == ']') {
                ++i_;
                return;
            }
            for (int k = 0;; ++k) {
                value(ptr + "/" + std::to_string(k));
                ws();
                if (peek() == ',') {
                    ++i_;
                    continue;
                }
                ++i_;  // ']'
                return;
            }
        }
        if (c == '"') {
            string();
            return;
        }
        while (i_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[i_])) || t_[i_] == '-' ||
                                  t_[i_] == '+' || t_[i_] == '.'))
            ++i_;
    }

private:
    char peek() const { return i_ < t_.size() ? t_[i_] : '\0'; }

    void ws() {
        while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) {
            if (t_[i_] == '\n') ++line_;
            ++i_;
        }
    }

    std::string string() {
        std::string s;
        ++i_;
        while (i_ < t_.size() && t_[i_] != '"') {
            if (t_[i_] == '\\') {
                s += t_[i_ + 1];
                i_ += 2;
                continue;
            }
            s += t_[i_++];
        }
        ++i_;
        return s;
    }

    const std::string& t_;
    std::map<std::string, int>& out_;
    std::size_t i_ = 0;
    int line_ = 1;
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

LineIndex::LineIndex(const std::string& text) {
    Scanner s(text, lines_);
    s.value("");
}

int LineIndex::line_of(const std::string& pointer) const {
    std::string p = pointer;
    for (;;) {
        auto it = lines_.find(p);
        if (it != lines_.end()) return it->second;
        if (p.empty()) return 1;
        auto cut = p.rfind('/');
        p = cut == std::string::npos ? "" : p.substr(0, cut);
    }
}

std::string render_csv(const Scenario& sc, const RunOutput& out) {
    std::ostringstream os;
    os << "scenario_id,definition,engine,epsilon,n,count,exactness\n";
    for (auto& est : out.estimates)
        for (auto& ls : est.series)
            for (auto& e : ls.series.entries)
                os << sc.id << ',' << ls.label << ',' << engine_name(ls.series.engine) << ',' << fmt(ls.series.epsilon)
                   << ',' << e.n << ',' << e.count << ',' << (e.exact && est.exact ? "exact" : "lower-bound")
                   << '\n';
    return os.str();
}

Json render_report(const Scenario& sc, const RunOutput& out) {
    Json j;
    j["scenario"] = sc.id;
    j["schema"] = kSchema;
    Json ests = Json::array();
    for (auto& est : out.estimates) {
        Json e;
        e["definition"] = tag(est.definition);
        e["value"] = est.value;
        Json per = Json::array();
        for (auto& p : est.per_epsilon) {
            Json q;
            q["epsilon"] = p.epsilon;
            if (p.fitted) {
                q["rate"] = p.fit.rate;
                q["endpoint_rate"] = p.fit.endpoint_rate;
                q["residual"] = p.fit.residual;
                q["n_range"] = {p.fit.n_lo, p.fit.n_hi};
            } else {
                q["rate"] = nullptr;
                q["endpoint_rate"] = nullptr;
                q["residual"] = nullptr;
                q["skipped"] = p.note;
            }
            per.push_back(q);
        }
        e["per_epsilon"] = per;
        e["window"] = est.window;
        e["engine"] = engine_name(est.engine);
        e["exactness"] = est.exact ? "exact" : "lower-bound";
        ests.push_back(e);
    }
    j["estimates"] = ests;
    if (out.degree_bound) {
        j["degree_lower_bound"] = out.degree_bound->value;
        j["degree_lower_bound_horizon"] = out.degree_bound->horizon_value;
    }
    return j;
}

Json render_checks(const std::vector<InequalityResult>& checks) {
    Json arr = Json::array();
    for (auto& c : checks) {
        Json j;
        j["name"] = c.name;
        j["lhs"] = c.lhs;
        j["rhs"] = c.rhs;
        j["tolerance"] = c.tolerance;
        j["pass"] = c.pass;
        if (c.skipped) j["skipped"] = c.reason;
        arr.push_back(j);
    }
    return arr;
}

}  // namespace orbitropy
