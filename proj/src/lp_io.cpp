#include "circol/lp_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "circol/error.hpp"

namespace circol {

namespace {

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

bool parse_num(const std::string& s, double& out) {
    if (s.empty()) return false;
    std::string lower = s;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "inf" || lower == "+inf" || lower == "infinity" || lower == "+infinity") {
        out = kInf;
        return true;
    }
    if (lower == "-inf" || lower == "-infinity") {
        out = -kInf;
        return true;
    }
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(t);
    return out;
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

const char* relation_text(Relation r) {
    switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Equal: return "=";
    }
    return "=";
}

// Collects variables while parsing; materialized into an LpModel at the end.
struct Draft {
    struct Var {
        std::string name;
        double lower = 0.0;
        double upper = kInf;
        VarKind kind = VarKind::Continuous;
        bool bounded = false;
    };
    std::vector<Var> vars;
    std::unordered_map<std::string, int> index;
    Sense sense = Sense::Minimize;
    std::vector<Term> objective;
    double constant = 0.0;
    std::vector<Constraint> rows;
    std::string formulation;

    int var(const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        const int id = static_cast<int>(vars.size());
        vars.push_back({name});
        index.emplace(name, id);
        return id;
    }

    LpModel build() const {
        LpModel m(formulation);
        for (const auto& v : vars) m.add_variable(v.name, v.lower, v.upper, v.kind);
        m.set_objective(sense, objective, constant);
        for (const auto& r : rows) m.add_constraint(r.name, r.terms, r.relation, r.rhs);
        return m;
    }
};

void write_terms(std::ostream& out, const LpModel& model, const std::vector<Term>& terms, std::size_t& width) {
    for (const Term& t : terms) {
        std::string piece = t.coef < 0 ? " - " : " + ";
        const double mag = std::abs(t.coef);
        if (mag != 1.0) piece += num(mag) + " ";
        piece += model.variable(t.var).name;
        if (width + piece.size() > 78) {
            out << "\n   ";
            width = 3;
        }
        out << piece;
        width += piece.size();
    }
}

} // namespace

void write_lp(std::ostream& out, const LpModel& model) {
    out << "\\ formulation " << (model.formulation().empty() ? "-" : model.formulation()) << '\n';
    out << (model.sense() == Sense::Minimize ? "Minimize" : "Maximize") << '\n';
    out << " obj:";
    std::size_t width = 5;
    write_terms(out, model, model.objective(), width);
    if (model.objective_constant() != 0.0) {
        out << (model.objective_constant() < 0 ? " - " : " + ") << num(std::abs(model.objective_constant()));
    }
    out << '\n';
    out << "Subject To\n";
    for (const auto& c : model.constraints()) {
        out << ' ' << c.name << ':';
        width = c.name.size() + 2;
        write_terms(out, model, c.terms, width);
        out << ' ' << relation_text(c.relation) << ' ' << num(c.rhs) << '\n';
    }
    out << "Bounds\n";
    for (const auto& v : model.variables()) {
        if (v.kind == VarKind::Binary && v.lower == 0.0 && v.upper == 1.0) continue;
        if (std::isinf(v.lower) && std::isinf(v.upper)) {
            out << ' ' << v.name << " free\n";
        } else if (v.lower == v.upper) {
            out << ' ' << v.name << " = " << num(v.lower) << '\n';
        } else if (std::isinf(v.upper)) {
            out << ' ' << v.name << " >= " << num(v.lower) << '\n';
        } else {
            out << ' ' << num(v.lower) << " <= " << v.name << " <= " << num(v.upper) << '\n';
        }
    }
    auto list = [&](const char* header, VarKind kind) {
        bool any = false;
        for (const auto& v : model.variables()) {
            if (v.kind != kind) continue;
            if (!any) out << header << '\n';
            any = true;
            out << ' ' << v.name << '\n';
        }
    };
    list("Generals", VarKind::Integer);
    list("Binaries", VarKind::Binary);
    out << "End\n";
}

LpModel read_lp(std::istream& in) {
    enum class Section { None, Objective, Constraints, Bounds, Generals, Binaries, End };
    Draft d;
    Section section = Section::None;
    std::vector<std::pair<std::string, int>> obj_tokens;
    std::vector<std::pair<std::string, int>> row_tokens;
    std::string line;
    int lineno = 0;
    bool has_sense = false;
    // variables keep the order of their first mention in the objective and rows
    auto declare = [&](const std::string& t) {
        double ignored = 0.0;
        if (t == "+" || t == "-" || t == "<=" || t == ">=" || t == "=" || t == "=<" || t == "=>") return;
        if (t.back() == ':' || parse_num(t, ignored)) return;
        d.var(t);
    };
    while (section != Section::End && std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '\\') {
            const auto toks = split(line.substr(1));
            if (toks.size() == 2 && toks[0] == "formulation" && toks[1] != "-") d.formulation = toks[1];
            continue;
        }
        const auto toks = split(line);
        if (toks.empty()) continue;
        std::string joined;
        for (const auto& t : toks) joined += (joined.empty() ? "" : " ") + lowercase(t);
        if (joined == "minimize" || joined == "minimum" || joined == "min") {
            d.sense = Sense::Minimize;
            has_sense = true;
            section = Section::Objective;
            continue;
        }
        if (joined == "maximize" || joined == "maximum" || joined == "max") {
            d.sense = Sense::Maximize;
            has_sense = true;
            section = Section::Objective;
            continue;
        }
        if (joined == "subject to" || joined == "such that" || joined == "st" || joined == "s.t.") {
            if (!has_sense) parse_fail(lineno, "constraints before the objective section");
            section = Section::Constraints;
            continue;
        }
        if (joined == "bounds") {
            section = Section::Bounds;
            continue;
        }
        if (joined == "generals" || joined == "general") {
            section = Section::Generals;
            continue;
        }
        if (joined == "binaries" || joined == "binary") {
            section = Section::Binaries;
            continue;
        }
        if (joined == "end") {
            section = Section::End;
            continue;
        }
        switch (section) {
        case Section::None: parse_fail(lineno, "content before the objective section");
        case Section::Objective:
            for (const auto& t : toks) {
                obj_tokens.emplace_back(t, lineno);
                declare(t);
            }
            break;
        case Section::Constraints:
            for (const auto& t : toks) {
                row_tokens.emplace_back(t, lineno);
                declare(t);
            }
            break;
        case Section::Bounds: {
            double a = 0.0;
            double b = 0.0;
            auto bound = [&](const std::string& name) -> Draft::Var& {
                auto& v = d.vars[static_cast<std::size_t>(d.var(name))];
                v.bounded = true;
                return v;
            };
            if (toks.size() == 2 && lowercase(toks[1]) == "free") {
                auto& v = bound(toks[0]);
                v.lower = -kInf;
                v.upper = kInf;
            } else if (toks.size() == 3 && parse_num(toks[2], a)) {
                auto& v = bound(toks[0]);
                if (toks[1] == "<=") {
                    v.upper = a;
                } else if (toks[1] == ">=") {
                    v.lower = a;
                } else if (toks[1] == "=") {
                    v.lower = v.upper = a;
                } else {
                    parse_fail(lineno, "bad bound relation '" + toks[1] + "'");
                }
            } else if (toks.size() == 5 && parse_num(toks[0], a) && toks[1] == "<=" && toks[3] == "<=" &&
                       parse_num(toks[4], b)) {
                auto& v = bound(toks[2]);
                v.lower = a;
                v.upper = b;
            } else {
                parse_fail(lineno, "unrecognized bound");
            }
            break;
        }
        case Section::Generals:
        case Section::Binaries:
            for (const auto& t : toks) {
                auto& v = d.vars[static_cast<std::size_t>(d.var(t))];
                if (section == Section::Generals) {
                    v.kind = VarKind::Integer;
                } else {
                    v.kind = VarKind::Binary;
                    if (!v.bounded) {
                        v.lower = 0.0;
                        v.upper = 1.0;
                    }
                }
            }
            break;
        case Section::End: break;
        }
    }
    if (section != Section::End) throw Error(ErrorCode::ParseError, "missing End");

    // Linear expression parser shared by the objective and the rows. Stops at
    // a relation token or the end of input; returns the position reached.
    auto parse_expr = [&](const std::vector<std::pair<std::string, int>>& toks, std::size_t pos,
                          std::vector<Term>& terms, double& constant) {
        while (pos < toks.size()) {
            const auto& [t, ln] = toks[pos];
            if (t == "<=" || t == ">=" || t == "=" || t == "=<" || t == "=>") break;
            if (t.back() == ':') break;
            double sign = 1.0;
            if (t == "+" || t == "-") {
                sign = t == "-" ? -1.0 : 1.0;
                if (++pos >= toks.size()) parse_fail(ln, "dangling sign");
            }
            double coef = 1.0;
            double value = 0.0;
            if (parse_num(toks[pos].first, value)) {
                coef = value;
                ++pos;
                const bool ends = pos >= toks.size() || toks[pos].first == "+" || toks[pos].first == "-" ||
                                  toks[pos].first == "<=" || toks[pos].first == ">=" || toks[pos].first == "=" ||
                                  toks[pos].first.back() == ':';
                if (ends) {
                    constant += sign * coef;
                    continue;
                }
            }
            const std::string& name = toks[pos].first;
            if (name == "+" || name == "-") parse_fail(toks[pos].second, "expected a variable name");
            terms.push_back({d.var(name), sign * coef});
            ++pos;
        }
        return pos;
    };

    std::size_t pos = 0;
    if (!obj_tokens.empty() && obj_tokens[0].first.back() == ':') pos = 1;
    pos = parse_expr(obj_tokens, pos, d.objective, d.constant);
    if (pos != obj_tokens.size()) parse_fail(obj_tokens[pos].second, "unexpected token in objective");

    pos = 0;
    while (pos < row_tokens.size()) {
        Constraint c;
        const auto& [head, ln] = row_tokens[pos];
        if (head.back() == ':') {
            c.name = head.substr(0, head.size() - 1);
            ++pos;
        } else {
            c.name = "R" + std::to_string(d.rows.size() + 1);
        }
        double constant = 0.0;
        pos = parse_expr(row_tokens, pos, c.terms, constant);
        if (pos + 1 >= row_tokens.size()) parse_fail(ln, "constraint '" + c.name + "' is incomplete");
        const std::string& rel = row_tokens[pos].first;
        if (rel == "<=" || rel == "=<") {
            c.relation = Relation::LessEqual;
        } else if (rel == ">=" || rel == "=>") {
            c.relation = Relation::GreaterEqual;
        } else if (rel == "=") {
            c.relation = Relation::Equal;
        } else {
            parse_fail(row_tokens[pos].second, "expected a relation");
        }
        double rhs = 0.0;
        if (!parse_num(row_tokens[pos + 1].first, rhs)) parse_fail(row_tokens[pos + 1].second, "expected a number");
        c.rhs = rhs - constant;
        pos += 2;
        d.rows.push_back(std::move(c));
    }
    return d.build();
}

namespace {

bool short_names(const std::vector<std::string>& names) {
    return std::all_of(names.begin(), names.end(), [](const std::string& s) {
        return !s.empty() && s.size() <= 8 && s.find(' ') == std::string::npos;
    });
}

bool columns_fit(const LpModel& model) {
    std::vector<std::string> names;
    for (const auto& v : model.variables()) names.push_back(v.name);
    return short_names(names);
}

bool rows_fit(const LpModel& model) {
    std::vector<std::string> names;
    for (const auto& c : model.constraints()) names.push_back(c.name);
    return short_names(names);
}

std::string generic(char prefix, int k) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%c%07d", prefix, k + 1);
    return buf;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

// Fields start in columns 2, 5, 15, 25 (and 40, 50 for a second pair).
std::string card(const std::string& f1, const std::string& f2, const std::string& f3 = {},
                 const std::string& f4 = {}) {
    std::string line = " " + pad(f1, 2) + " " + pad(f2, 8);
    if (!f3.empty()) line += "  " + pad(f3, 8);
    if (!f4.empty()) line += "  " + f4;
    while (!line.empty() && line.back() == ' ') line.pop_back();
    return line;
}

} // namespace

std::string mps_column_name(const LpModel& model, int var) {
    return columns_fit(model) ? model.variable(var).name : generic('C', var);
}

std::string mps_row_name(const LpModel& model, int row) {
    return rows_fit(model) ? model.constraints()[static_cast<std::size_t>(row)].name : generic('R', row);
}

void write_mps(std::ostream& out, const LpModel& model) {
    const bool cols_ok = columns_fit(model);
    const bool rows_ok = rows_fit(model);
    auto col = [&](int j) { return cols_ok ? model.variable(j).name : generic('C', j); };
    auto row = [&](int r) { return rows_ok ? model.constraints()[static_cast<std::size_t>(r)].name : generic('R', r); };
    const std::string obj = "obj";

    out << "NAME          " << model.formulation() << '\n';
    if (model.sense() == Sense::Maximize) out << "OBJSENSE\n    MAX\n";
    out << "ROWS\n";
    out << card("N", obj) << '\n';
    for (int r = 0; r < model.constraint_count(); ++r) {
        const auto rel = model.constraints()[static_cast<std::size_t>(r)].relation;
        out << card(rel == Relation::LessEqual ? "L" : rel == Relation::GreaterEqual ? "G" : "E", row(r)) << '\n';
    }

    // column-major entries
    std::vector<std::vector<std::pair<std::string, double>>> entries(static_cast<std::size_t>(model.variable_count()));
    for (const Term& t : model.objective()) entries[static_cast<std::size_t>(t.var)].emplace_back(obj, t.coef);
    for (int r = 0; r < model.constraint_count(); ++r) {
        for (const Term& t : model.constraints()[static_cast<std::size_t>(r)].terms) {
            entries[static_cast<std::size_t>(t.var)].emplace_back(row(r), t.coef);
        }
    }
    out << "COLUMNS\n";
    bool in_int = false;
    int marker = 0;
    auto set_marker = [&](bool want) {
        if (want == in_int) return;
        char name[16];
        std::snprintf(name, sizeof name, "M%07d", marker++);
        out << "    " << pad(name, 8) << "  'MARKER'                 " << (want ? "'INTORG'" : "'INTEND'") << '\n';
        in_int = want;
    };
    for (int j = 0; j < model.variable_count(); ++j) {
        set_marker(model.variable(j).kind != VarKind::Continuous);
        auto& list = entries[static_cast<std::size_t>(j)];
        if (list.empty()) list.emplace_back(obj, 0.0);
        for (const auto& [r, v] : list) out << card("", col(j), r, num(v)) << '\n';
    }
    set_marker(false);

    out << "RHS\n";
    if (model.objective_constant() != 0.0) out << card("", "RHS", obj, num(-model.objective_constant())) << '\n';
    for (int r = 0; r < model.constraint_count(); ++r) {
        const double rhs = model.constraints()[static_cast<std::size_t>(r)].rhs;
        if (rhs != 0.0) out << card("", "RHS", row(r), num(rhs)) << '\n';
    }

    out << "BOUNDS\n";
    for (int j = 0; j < model.variable_count(); ++j) {
        const auto& v = model.variable(j);
        const std::string name = col(j);
        if (v.kind == VarKind::Binary && v.lower == 0.0 && v.upper == 1.0) {
            out << card("BV", "BND", name) << '\n';
            continue;
        }
        if (std::isinf(v.lower) && std::isinf(v.upper)) {
            out << card("FR", "BND", name) << '\n';
            continue;
        }
        if (v.lower == v.upper) {
            out << card("FX", "BND", name, num(v.lower)) << '\n';
            continue;
        }
        if (std::isinf(v.lower)) {
            out << card("MI", "BND", name) << '\n';
        } else if (v.lower != 0.0) {
            out << card("LO", "BND", name, num(v.lower)) << '\n';
        }
        if (!std::isinf(v.upper)) {
            out << card("UP", "BND", name, num(v.upper)) << '\n';
        } else if (v.kind != VarKind::Continuous) {
            out << card("PL", "BND", name) << '\n';
        }
    }
    out << "ENDATA\n";
}

LpModel read_mps(std::istream& in) {
    enum class Section { None, Name, ObjSense, Rows, Columns, Rhs, Ranges, Bounds, End };
    Draft d;
    Section section = Section::None;
    std::string obj;
    std::unordered_map<std::string, int> row_index;
    bool in_int = false;
    std::string line;
    int lineno = 0;
    auto number = [&](const std::string& s) {
        double v = 0.0;
        if (!parse_num(s, v)) parse_fail(lineno, "expected a number, got '" + s + "'");
        return v;
    };
    auto add_entry = [&](int j, const std::string& r, double v) {
        if (r == obj) {
            if (v != 0.0) d.objective.push_back({j, v});
            return;
        }
        auto it = row_index.find(r);
        if (it == row_index.end()) parse_fail(lineno, "unknown row '" + r + "'");
        d.rows[static_cast<std::size_t>(it->second)].terms.push_back({j, v});
    };
    while (section != Section::End && std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '*') continue;
        const auto toks = split(line);
        if (toks.empty()) continue;
        if (!std::isspace(static_cast<unsigned char>(line[0]))) {
            const std::string head = toks[0];
            if (head == "NAME") {
                section = Section::Name;
                if (toks.size() > 1) d.formulation = toks[1];
            } else if (head == "OBJSENSE") {
                section = Section::ObjSense;
                if (toks.size() > 1) d.sense = toks[1] == "MAX" ? Sense::Maximize : Sense::Minimize;
            } else if (head == "ROWS") {
                section = Section::Rows;
            } else if (head == "COLUMNS") {
                section = Section::Columns;
            } else if (head == "RHS") {
                section = Section::Rhs;
            } else if (head == "RANGES") {
                section = Section::Ranges;
            } else if (head == "BOUNDS") {
                section = Section::Bounds;
            } else if (head == "ENDATA") {
                section = Section::End;
            } else {
                parse_fail(lineno, "unknown section '" + head + "'");
            }
            continue;
        }
        switch (section) {
        case Section::ObjSense:
            if (toks[0] == "MAX" || toks[0] == "MAXIMIZE") {
                d.sense = Sense::Maximize;
            } else if (toks[0] == "MIN" || toks[0] == "MINIMIZE") {
                d.sense = Sense::Minimize;
            } else {
                parse_fail(lineno, "bad OBJSENSE");
            }
            break;
        case Section::Rows: {
            if (toks.size() != 2) parse_fail(lineno, "ROWS entry needs a type and a name");
            const std::string& type = toks[0];
            if (type == "N") {
                if (obj.empty()) obj = toks[1];
                break;
            }
            Constraint c;
            c.name = toks[1];
            if (type == "L") {
                c.relation = Relation::LessEqual;
            } else if (type == "G") {
                c.relation = Relation::GreaterEqual;
            } else if (type == "E") {
                c.relation = Relation::Equal;
            } else {
                parse_fail(lineno, "bad row type '" + type + "'");
            }
            if (!row_index.emplace(c.name, static_cast<int>(d.rows.size())).second) {
                parse_fail(lineno, "duplicate row '" + c.name + "'");
            }
            d.rows.push_back(std::move(c));
            break;
        }
        case Section::Columns: {
            if (toks.size() >= 3 && toks[1] == "'MARKER'") {
                if (toks[2] == "'INTORG'") {
                    in_int = true;
                } else if (toks[2] == "'INTEND'") {
                    in_int = false;
                } else {
                    parse_fail(lineno, "bad marker");
                }
                break;
            }
            if (toks.size() != 3 && toks.size() != 5) parse_fail(lineno, "COLUMNS entry needs 3 or 5 fields");
            const int j = d.var(toks[0]);
            if (in_int) d.vars[static_cast<std::size_t>(j)].kind = VarKind::Integer;
            add_entry(j, toks[1], number(toks[2]));
            if (toks.size() == 5) add_entry(j, toks[3], number(toks[4]));
            break;
        }
        case Section::Rhs: {
            if (toks.size() != 3 && toks.size() != 5) parse_fail(lineno, "RHS entry needs 3 or 5 fields");
            for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
                const double v = number(toks[k + 1]);
                if (toks[k] == obj) {
                    d.constant = -v;
                    continue;
                }
                auto it = row_index.find(toks[k]);
                if (it == row_index.end()) parse_fail(lineno, "unknown row '" + toks[k] + "'");
                d.rows[static_cast<std::size_t>(it->second)].rhs = v;
            }
            break;
        }
        case Section::Ranges: parse_fail(lineno, "RANGES are not supported");
        case Section::Bounds: {
            if (toks.size() < 3) parse_fail(lineno, "BOUNDS entry needs a type, a set name and a column");
            auto it = d.index.find(toks[2]);
            if (it == d.index.end()) parse_fail(lineno, "unknown column '" + toks[2] + "'");
            auto& v = d.vars[static_cast<std::size_t>(it->second)];
            const std::string& type = toks[0];
            auto value = [&] {
                if (toks.size() < 4) parse_fail(lineno, "bound " + type + " needs a value");
                return number(toks[3]);
            };
            if (type == "UP") {
                v.upper = value();
            } else if (type == "LO") {
                v.lower = value();
            } else if (type == "FX") {
                v.lower = v.upper = value();
            } else if (type == "FR") {
                v.lower = -kInf;
                v.upper = kInf;
            } else if (type == "MI") {
                v.lower = -kInf;
            } else if (type == "PL") {
                v.upper = kInf;
            } else if (type == "BV") {
                v.kind = VarKind::Binary;
                v.lower = 0.0;
                v.upper = 1.0;
            } else if (type == "LI") {
                v.kind = VarKind::Integer;
                v.lower = value();
            } else if (type == "UI") {
                v.kind = VarKind::Integer;
                v.upper = value();
            } else {
                parse_fail(lineno, "bad bound type '" + type + "'");
            }
            break;
        }
        case Section::None:
        case Section::Name: parse_fail(lineno, "data outside a section");
        case Section::End: break;
        }
    }
    if (section != Section::End) throw Error(ErrorCode::ParseError, "missing ENDATA");
    if (obj.empty()) throw Error(ErrorCode::ParseError, "no objective row");
    return d.build();
}

std::string sidecar_json(const LpModel& model) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["formulation"] = model.formulation();
    doc["sense"] = model.sense() == Sense::Minimize ? "min" : "max";
    ordered_json vars = ordered_json::array();
    for (int j = 0; j < model.variable_count(); ++j) {
        const auto& v = model.variable(j);
        vars.push_back({{"name", v.name}, {"mps", mps_column_name(model, j)}, {"role", v.tag.role}, {"index", v.tag.index}});
    }
    doc["variables"] = std::move(vars);
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < model.constraint_count(); ++r) {
        rows.push_back({{"name", model.constraints()[static_cast<std::size_t>(r)].name}, {"mps", mps_row_name(model, r)}});
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

LpModel apply_sidecar(const LpModel& parsed, const std::string& json) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("sidecar: ") + e.what());
    }
    try {
        LpModel m(doc.at("formulation").get<std::string>());
        std::vector<int> remap(static_cast<std::size_t>(parsed.variable_count()), -1);
        for (const auto& entry : doc.at("variables")) {
            const auto name = entry.at("name").get<std::string>();
            auto src = parsed.find_variable(name);
            if (!src) src = parsed.find_variable(entry.at("mps").get<std::string>());
            if (!src) throw Error(ErrorCode::ParseError, "sidecar variable '" + name + "' is not in the model");
            const auto& v = parsed.variable(*src);
            VariableTag tag{entry.at("role").get<std::string>(), entry.at("index").get<std::vector<int>>()};
            remap[static_cast<std::size_t>(*src)] = m.add_variable(name, v.lower, v.upper, v.kind, std::move(tag));
        }
        for (int j = 0; j < parsed.variable_count(); ++j) {
            if (remap[static_cast<std::size_t>(j)] < 0) {
                throw Error(ErrorCode::ParseError, "variable '" + parsed.variable(j).name + "' missing from sidecar");
            }
        }
        auto mapped = [&](const std::vector<Term>& terms) {
            std::vector<Term> out;
            for (const Term& t : terms) out.push_back({remap[static_cast<std::size_t>(t.var)], t.coef});
            return out;
        };
        m.set_objective(parsed.sense(), mapped(parsed.objective()), parsed.objective_constant());
        std::map<std::string, std::string> row_names;
        for (const auto& entry : doc.at("rows")) {
            row_names[entry.at("mps").get<std::string>()] = entry.at("name").get<std::string>();
        }
        for (const auto& c : parsed.constraints()) {
            auto it = row_names.find(c.name);
            m.add_constraint(it == row_names.end() ? c.name : it->second, mapped(c.terms), c.relation, c.rhs);
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("sidecar: ") + e.what());
    }
}

} // namespace circol
