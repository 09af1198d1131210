#include "resched/lp/lp_format.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "resched/lp/simplex.hpp"

namespace resched::lp {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_terms(std::ostream& os, const std::vector<double>& coefs,
                 const std::vector<std::string>& names) {
    bool first = true;
    int on_line = 0;
    for (size_t v = 0; v < coefs.size(); ++v) {
        if (coefs[v] == 0.0) continue;
        double a = coefs[v];
        if (first) {
            if (a < 0) os << "- ";
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        double mag = std::fabs(a);
        if (mag != 1.0) os << num(mag) << ' ';
        os << names[v];
        if (++on_line % 6 == 0) os << "\n   ";
    }
    if (first) os << "0 " << names.at(0);
}

} // namespace

std::string format_lp(const PrimalLP& lp) {
    std::ostringstream os;
    os << "\\ factor-revealing primal, Q=" << lp.Q << " M=" << lp.M << "\n";
    os << "Maximize\n obj: ";
    write_terms(os, lp.c, lp.var_names);
    os << "\nSubject To\n";
    for (size_t r = 0; r < lp.A.size(); ++r) {
        os << ' ' << lp.rows[r].name << ": ";
        write_terms(os, lp.A[r], lp.var_names);
        os << " <= " << num(lp.b[r]) << "\n";
    }
    os << "Bounds\n";
    for (const auto& name : lp.var_names) os << ' ' << name << " >= 0\n";
    os << "End\n";
    return os.str();
}

void export_lp(const PrimalLP& lp, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << format_lp(lp);
    if (!out) throw Error("write failed: " + path);
}

namespace {

struct TermReader {
    // parses "[-] [coef] name [+|- [coef] name]..." into a coefficient map
    static void read(const std::string& text, std::map<std::string, double>& out) {
        std::istringstream is(text);
        std::string tok;
        double sign = 1.0;
        double pending = 1.0;
        bool have_coef = false;
        while (is >> tok) {
            if (tok == "+") {
                sign = 1.0;
                continue;
            }
            if (tok == "-") {
                sign = -1.0;
                continue;
            }
            char* end = nullptr;
            double v = std::strtod(tok.c_str(), &end);
            if (end && *end == '\0') {
                pending = v;
                have_coef = true;
                continue;
            }
            out[tok] += sign * (have_coef ? pending : 1.0);
            sign = 1.0;
            pending = 1.0;
            have_coef = false;
        }
    }
};

} // namespace

ParsedLP parse_lp_text(const std::string& text) {
    ParsedLP out;
    std::istringstream is(text);
    std::string line;
    enum { None, Objective, Rows, Bounds } section = None;

    std::vector<std::pair<std::string, std::map<std::string, double>>> rows;
    std::map<std::string, double> objective;
    std::vector<double> rhs;
    std::string carry; // logical line accumulated across continuations
    std::string carry_name;
    bool carry_active = false;

    auto flush = [&]() {
        if (!carry_active) return;
        if (section == Objective) {
            TermReader::read(carry, objective);
        } else if (section == Rows) {
            auto le = carry.rfind("<=");
            if (le == std::string::npos) throw Error("lp parse: row without <=");
            std::map<std::string, double> terms;
            TermReader::read(carry.substr(0, le), terms);
            rhs.push_back(std::strtod(carry.substr(le + 2).c_str(), nullptr));
            rows.emplace_back(carry_name, std::move(terms));
        }
        carry.clear();
        carry_name.clear();
        carry_active = false;
    };

    while (std::getline(is, line)) {
        if (!line.empty() && line[0] == '\\') continue;
        std::string trimmed = line;
        while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t'))
            trimmed.erase(trimmed.begin());
        if (trimmed.empty()) continue;
        if (trimmed == "Maximize") {
            flush();
            section = Objective;
            continue;
        }
        if (trimmed == "Subject To") {
            flush();
            section = Rows;
            continue;
        }
        if (trimmed == "Bounds") {
            flush();
            section = Bounds;
            continue;
        }
        if (trimmed == "End") {
            flush();
            break;
        }
        if (section == Bounds) continue; // all bounds are x >= 0
        auto name_end = trimmed.find(':');
        if (name_end != std::string::npos) {
            flush();
            carry_name = trimmed.substr(0, name_end);
            carry = trimmed.substr(name_end + 1);
            carry_active = true;
        } else {
            carry += ' ';
            carry += trimmed;
        }
    }
    flush();

    // variable order: first appearance in the objective, then rows
    std::map<std::string, int> index;
    auto intern = [&](const std::string& name) {
        auto [it, fresh] = index.emplace(name, static_cast<int>(out.var_names.size()));
        if (fresh) out.var_names.push_back(name);
        return it->second;
    };
    for (const auto& [name, coef] : objective) intern(name);
    for (const auto& [rname, terms] : rows)
        for (const auto& [name, coef] : terms) intern(name);

    out.c.assign(out.var_names.size(), 0.0);
    for (const auto& [name, coef] : objective) out.c[static_cast<size_t>(index[name])] = coef;
    for (size_t r = 0; r < rows.size(); ++r) {
        out.row_names.push_back(rows[r].first);
        out.A.emplace_back(out.var_names.size(), 0.0);
        for (const auto& [name, coef] : rows[r].second)
            out.A.back()[static_cast<size_t>(index[name])] = coef;
    }
    out.b = rhs;
    return out;
}

ParsedLP parse_lp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_lp_text(buf.str());
}

PrimalSolveResult solve_primal_exact(const PrimalLP& lp, bool exact_rational) {
    if (lp.Q > 6)
        throw CapExceeded("solve_primal_exact is capped at Q <= 6 (dense simplex)");
    PrimalSolveResult out;
    auto sol = solve_max_simplex<double>(lp.A, lp.b, lp.c, 1e-11);
    out.value = sol.value;
    out.iterations = sol.iterations;

    if (exact_rational) {
        if (lp.Q > 3)
            throw CapExceeded("exact-rational simplex is capped at Q <= 3");
        using Rational = boost::multiprecision::cpp_rational;
        std::vector<std::vector<Rational>> A(lp.A.size());
        for (size_t i = 0; i < lp.A.size(); ++i)
            A[i].assign(lp.A[i].begin(), lp.A[i].end());
        std::vector<Rational> b(lp.b.begin(), lp.b.end());
        std::vector<Rational> c(lp.c.begin(), lp.c.end());
        auto rsol = solve_max_simplex<Rational>(A, b, c, Rational(0));
        double rvalue = static_cast<double>(rsol.value);
        if (std::fabs(rvalue - out.value) > 1e-7 * std::max(1.0, std::fabs(rvalue)))
            throw Error("floating simplex disagrees with the exact-rational run");
        out.value = rvalue;
        out.rational_checked = true;
    }
    return out;
}

} // namespace resched::lp
