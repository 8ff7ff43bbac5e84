// Licensed under the Apache License 2.0 (see LICENSE file).

#include "tvop/mip.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "tvop/error.hpp"
#include "tvop/st_graph.hpp"

namespace tvop {

namespace {

constexpr std::size_t kTermsPerLine = 8;

std::string number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Writes " name: t1 + t2 ... sense rhs", wrapping long sums.
class RowWriter {
public:
    explicit RowWriter(std::ostringstream& os) : os_(os) {}

    void begin(const std::string& name) {
        os_ << ' ' << name << ':';
        count_ = 0;
    }
    void term(double coef, const std::string& var) {
        if (count_ > 0 && count_ % kTermsPerLine == 0) os_ << "\n  ";
        if (coef < 0) {
            os_ << " - ";
            coef = -coef;
        } else if (count_ > 0) {
            os_ << " + ";
        } else {
            os_ << ' ';
        }
        if (coef != 1.0) os_ << number(coef) << ' ';
        os_ << var;
        ++count_;
    }
    void end(const char* sense, double rhs) { os_ << ' ' << sense << ' ' << number(rhs) << '\n'; }
    void end() { os_ << '\n'; }

private:
    std::ostringstream& os_;
    std::size_t count_ = 0;
};

}  // namespace

std::string edge_variable(int i, int u, int j, int s) {
    return "y_" + std::to_string(i) + '_' + std::to_string(u) + '_' + std::to_string(j) + '_' + std::to_string(s);
}

std::string visit_variable(int i, int u) { return "v_" + std::to_string(i) + '_' + std::to_string(u); }

std::string emit_mip(const Instance& instance, std::size_t variable_cap) {
    const StGraph g = StGraph::build(instance);
    const std::size_t variables = g.edge_count() + g.vertex_count();
    if (variables > variable_cap) {
        fail(ErrorCode::cap_exceeded, "model would have " + std::to_string(variables) +
                                          " variables, above the cap of " + std::to_string(variable_cap));
    }

    std::vector<std::vector<StIndex>> incoming(g.vertex_count());
    for (StIndex v = 0; v < g.vertex_count(); ++v) {
        g.for_each_successor(v, [&](StIndex w) { incoming[w].push_back(v); });
    }
    auto edge_name = [&](StIndex a, StIndex b) {
        const StNode x = g.node(a);
        const StNode y = g.node(b);
        return edge_variable(x.vertex, x.layer, y.vertex, y.layer);
    };
    auto visit_name = [&](StIndex a) {
        const StNode x = g.node(a);
        return visit_variable(x.vertex, x.layer);
    };

    std::ostringstream os;
    os << "\\ Time-expanded orienteering model with time-varying profits.\n"
       << "\\ vertices " << instance.vertex_count() << ", layers 0.." << g.layers() << ", dt " << number(g.dt())
       << ", T " << number(instance.budget()) << '\n'
       << "\\ y_i_u_j_s: travel i->j leaving at layer u, arriving at layer s\n"
       << "\\ v_i_u: vertex i visited at layer u; objective collects f_i(u dt)\n"
       << "\\ start/depart: the path leaves (0,0) at most once\n"
       << "\\ in/out: flow conservation; every visited vertex has one way in, at most one way out\n"
       << "\\ once: at most one visit per spatial vertex (no subtours)\n"
       << "\\ budget and arrival times: implied by layers 0..n_T and edge spans\n";

    RowWriter row(os);
    os << "Maximize\n";
    row.begin("obj");
    bool any = false;
    for (StIndex v = 0; v < g.vertex_count(); ++v) {
        if (g.profit(v) != 0.0) {
            row.term(g.profit(v), visit_name(v));
            any = true;
        }
    }
    if (!any) row.term(0.0, visit_name(g.index(0, 0)));
    row.end();

    os << "Subject To\n";
    const StIndex start = g.index(0, 0);
    row.begin("start");
    row.term(1.0, visit_name(start));
    row.end("=", 1.0);

    const auto departures = g.successors(start);
    if (!departures.empty()) {
        row.begin("depart");
        for (StIndex w : departures) row.term(1.0, edge_name(start, w));
        row.end("<=", 1.0);
    }

    for (StIndex v = 0; v < g.vertex_count(); ++v) {
        if (v == start) continue;
        const StNode n = g.node(v);
        const std::string suffix = std::to_string(n.vertex) + '_' + std::to_string(n.layer);
        row.begin("in_" + suffix);
        for (StIndex a : incoming[v]) row.term(1.0, edge_name(a, v));
        row.term(-1.0, visit_name(v));
        row.end("=", 0.0);

        const auto out = g.successors(v);
        if (!out.empty()) {
            row.begin("out_" + suffix);
            for (StIndex w : out) row.term(1.0, edge_name(v, w));
            row.term(-1.0, visit_name(v));
            row.end("<=", 0.0);
        }
    }

    for (int i = 0; i < g.spatial_count(); ++i) {
        row.begin("once_" + std::to_string(i));
        for (int u = 0; u <= g.layers(); ++u) row.term(1.0, visit_variable(i, u));
        row.end("<=", 1.0);
    }

    os << "Binary\n";
    std::size_t on_line = 0;
    auto declare = [&](const std::string& name) {
        os << ' ' << name;
        if (++on_line == kTermsPerLine) {
            os << '\n';
            on_line = 0;
        }
    };
    for (StIndex v = 0; v < g.vertex_count(); ++v) {
        g.for_each_successor(v, [&](StIndex w) { declare(edge_name(v, w)); });
    }
    for (StIndex v = 0; v < g.vertex_count(); ++v) declare(visit_name(v));
    if (on_line != 0) os << '\n';
    os << "End\n";
    return os.str();
}

namespace {

enum class Section { none, objective, constraints, binary, end };

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '[' || c == ']';
}

class Lexer {
public:
    // `lines` maps offsets in `text` back to source line numbers.
    Lexer(const std::string& text, const std::vector<std::pair<std::size_t, int>>& lines)
        : text_(text), lines_(lines) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= text_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    std::string name() {
        skip_ws();
        const std::size_t begin = pos_;
        if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
        }
        if (pos_ == begin) error("expected a name");
        return text_.substr(begin, pos_ - begin);
    }
    double num() {
        skip_ws();
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) error("expected a number");
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }
    bool looks_like_number() {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }
    std::string sense() {
        skip_ws();
        for (const char* s : {"<=", ">=", "=<", "=>", "="}) {
            const std::size_t len = std::char_traits<char>::length(s);
            if (text_.compare(pos_, len, s) == 0) {
                pos_ += len;
                const std::string t = s;
                if (t == "=<") return "<=";
                if (t == "=>") return ">=";
                return t;
            }
        }
        error("expected a comparison operator");
    }
    // "name:" prefix if present.
    std::string label() {
        skip_ws();
        const std::size_t save = pos_;
        if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
            const std::size_t end = pos_;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == ':') {
                ++pos_;
                return text_.substr(save, end - save);
            }
        }
        pos_ = save;
        return {};
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    // Linear expression up to a comparison operator, or to the end of the
    // text when `until_end` is set.
    std::vector<std::pair<std::string, double>> terms(bool until_end) {
        std::vector<std::pair<std::string, double>> out;
        bool first = true;
        while (!done()) {
            const char c = peek();
            if (c == '<' || c == '>' || c == '=') break;
            double sign = 1.0;
            if (eat('+')) {
            } else if (eat('-')) {
                sign = -1.0;
            } else if (!first) {
                error("expected '+' or '-' between terms");
            }
            double coef = 1.0;
            if (looks_like_number()) coef = num();
            out.emplace_back(name(), sign * coef);
            first = false;
        }
        if (!until_end && done()) error("row ends without a comparison");
        return out;
    }
    [[noreturn]] void error(const std::string& what) {
        int line = lines_.empty() ? 0 : lines_.front().second;
        for (const auto& [offset, no] : lines_) {
            if (offset <= pos_) line = no;
        }
        fail(ErrorCode::validation, "LP line " + std::to_string(line) + ": " + what);
    }

private:
    const std::string& text_;
    const std::vector<std::pair<std::size_t, int>>& lines_;
    std::size_t pos_ = 0;
};

struct SectionText {
    std::string text;
    std::vector<std::pair<std::size_t, int>> lines;

    void append(const std::string& line, int no) {
        lines.emplace_back(text.size(), no);
        text += line;
        text += '\n';
    }
};

}  // namespace

LpModel parse_lp(const std::string& text) {
    LpModel model;
    Section section = Section::none;
    SectionText objective, constraints, binaries;
    bool seen_objective = false;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool saw_end = false;
    auto line_error = [&](const std::string& what) {
        fail(ErrorCode::validation, "LP line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto c = raw.find('\\'); c != std::string::npos) raw.erase(c);
        std::string trimmed = raw;
        trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
        trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
        if (trimmed.empty()) continue;
        if (saw_end) line_error("content after End");

        const std::string key = lower(trimmed);
        if (key == "maximize" || key == "maximum" || key == "max" || key == "minimize" || key == "minimum" ||
            key == "min") {
            if (seen_objective) line_error("second objective section");
            seen_objective = true;
            model.maximize = key.rfind("max", 0) == 0;
            section = Section::objective;
            continue;
        }
        if (key == "subject to" || key == "such that" || key == "st" || key == "s.t.") {
            if (section != Section::objective) line_error("constraints must follow the objective");
            section = Section::constraints;
            continue;
        }
        if (key == "binary" || key == "binaries" || key == "bin") {
            if (section != Section::constraints) line_error("Binary section out of order");
            section = Section::binary;
            continue;
        }
        if (key == "end") {
            saw_end = true;
            section = Section::end;
            continue;
        }
        switch (section) {
            case Section::objective: objective.append(trimmed, line_no); break;
            case Section::constraints: constraints.append(trimmed, line_no); break;
            case Section::binary: binaries.append(trimmed, line_no); break;
            default: line_error("text outside any section");
        }
    }
    if (!seen_objective) fail(ErrorCode::validation, "LP text has no objective");
    if (!saw_end) fail(ErrorCode::validation, "LP text is missing its End marker");

    {
        Lexer lex(objective.text, objective.lines);
        lex.label();
        model.objective = lex.terms(true);
        if (!lex.done()) lex.error("objective must not contain a comparison");
    }
    {
        Lexer lex(constraints.text, constraints.lines);
        while (!lex.done()) {
            LpRow row;
            row.name = lex.label();
            if (row.name.empty()) lex.error("constraint rows must be named");
            row.terms = lex.terms(false);
            if (row.terms.empty()) lex.error("constraint row has no terms");
            row.sense = lex.sense();
            double sign = 1.0;
            if (lex.eat('-')) {
                sign = -1.0;
            } else {
                lex.eat('+');
            }
            row.rhs = sign * lex.num();
            model.rows.push_back(std::move(row));
        }
    }
    std::set<std::string> declared;
    {
        Lexer lex(binaries.text, binaries.lines);
        while (!lex.done()) {
            std::string n = lex.name();
            declared.insert(n);
            model.binaries.push_back(std::move(n));
        }
    }

    std::set<std::string> used;
    for (const auto& [var, c] : model.objective) used.insert(var);
    for (const auto& row : model.rows) {
        for (const auto& [var, c] : row.terms) used.insert(var);
    }
    for (const auto& var : used) {
        if (!declared.count(var)) fail(ErrorCode::validation, "variable " + var + " is not declared binary");
    }
    return model;
}

double objective_value(const LpModel& model, const Assignment& values) {
    double total = 0.0;
    for (const auto& [var, coef] : model.objective) {
        if (auto it = values.find(var); it != values.end()) total += coef * it->second;
    }
    return total;
}

std::vector<std::string> unsatisfied_rows(const LpModel& model, const Assignment& values) {
    std::set<std::string> known(model.binaries.begin(), model.binaries.end());
    std::vector<std::string> bad;
    for (const auto& [var, value] : values) {
        if (value != 0 && !known.count(var)) bad.push_back("unknown variable " + var);
        if (value != 0 && value != 1) bad.push_back("non-binary value for " + var);
    }
    for (const auto& row : model.rows) {
        double lhs = 0.0;
        for (const auto& [var, coef] : row.terms) {
            if (auto it = values.find(var); it != values.end()) lhs += coef * it->second;
        }
        const double tol = 1e-9;
        const bool ok = row.sense == "<=" ? lhs <= row.rhs + tol
                        : row.sense == ">=" ? lhs >= row.rhs - tol
                                            : std::abs(lhs - row.rhs) <= tol;
        if (!ok) bad.push_back(row.name);
    }
    return bad;
}

Assignment route_assignment(const Route& route) {
    Assignment a;
    for (std::size_t k = 0; k < route.stops.size(); ++k) {
        const Stop& s = route.stops[k];
        a[visit_variable(s.vertex, s.layer)] = 1;
        if (k > 0) {
            const Stop& p = route.stops[k - 1];
            a[edge_variable(p.vertex, p.layer, s.vertex, s.layer)] = 1;
        }
    }
    return a;
}

Route decode_assignment(const Assignment& values, const Instance& instance) {
    std::map<std::pair<int, int>, std::pair<int, int>> next;
    for (const auto& [var, value] : values) {
        if (value == 0 || var.rfind("y_", 0) != 0) continue;
        int i = 0, u = 0, j = 0, s = 0;
        if (std::sscanf(var.c_str(), "y_%d_%d_%d_%d", &i, &u, &j, &s) != 4) {
            fail(ErrorCode::validation, "malformed edge variable " + var);
        }
        if (!next.emplace(std::pair{i, u}, std::pair{j, s}).second) {
            fail(ErrorCode::validation, "assignment branches at (" + std::to_string(i) + "," + std::to_string(u) + ")");
        }
    }
    Route r;
    r.solver = "mip-decoded";
    std::pair<int, int> at{0, 0};
    r.stops.push_back({0, 0, 0.0});
    for (auto it = next.find(at); it != next.end(); it = next.find(at)) {
        at = it->second;
        if (r.stops.size() > next.size() + 1) fail(ErrorCode::validation, "assignment contains a cycle");
        r.stops.push_back({at.first, at.second, instance.layer_time(at.second)});
    }
    for (const auto& s : r.stops) r.total_profit += instance.profit_at_layer(s.vertex, s.layer);
    return r;
}

}  // namespace tvop
