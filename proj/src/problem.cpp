#include "videq/problem.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace videq {

namespace {

const std::set<std::string> kFVars = {"t", "w", "wp", "I"};
const std::set<std::string> kGVars = {"t", "s", "w", "wp"};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) throw LoadError("malformed number for key '" + key + "'");
    double v = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (*first == '+') ++first;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw LoadError("malformed number for key '" + key + "': '" + t + "'");
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ','))
        out.push_back(parse_real(key, item));
    if (out.empty()) throw LoadError("empty list for key '" + key + "'");
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Problem make_ex1(bool corrected) {
    Problem p;
    p.T = 1.0;
    p.beta = std::exp(0.1);
    p.w0 = 3.1043464857494323;  // self-consistent with w(t) = exp(t/10)
    p.c = {1, 1, -1, 0, 1};
    p.tk = {0.2, 0.4, 0.6, 0.8, 1.0};
    p.LF = 0.01;
    p.LG = (1.0 + std::exp(0.1)) / 10.0;
    std::string constant = corrected ? "sin(1/10)/100" : "sin(1/10)/10";
    p.F = parse("0.010540 + " + constant + " - cos(w)/1000 - sin(wp)/100 + I/100", kFVars);
    p.G = parse("(w - exp(s/10)/10*sin(w) + exp(s/10)/10*cos(wp))/10", kGVars);
    p.label = corrected
        ? "worked example 1, constant term corrected to sin(1/10)/100 so that "
          "exp(t/10) satisfies the equation"
        : "worked example 1 as printed (constant term sin(1/10)/10; nonlocal datum "
          "is the self-consistent 3.1043465 rather than the rounded 3.10; "
          "coefficient reading c = [1,1,-1,0,1])";
    return p;
}

Problem make_ex2() {
    Problem p;
    p.T = 2.0;
    p.beta = 5.0;
    p.w0 = 1.25;  // self-consistent with w(t) = (t + t^2)/10
    p.c = {1, 1, 1, 1};
    p.tk = {0.5, 1.0, 1.5, 2.0};
    p.LF = 0.01;
    p.LG = 1.0;
    p.F = parse("2/10 - t^2/1000 - (9-t)/1000 + cos(w)/100 - wp/100 + I/100", kFVars);
    p.G = parse("(1+2*s)/10*sin(w) + wp", kGVars);
    p.label = "worked example 2 (nonlocal datum is the self-consistent 1.25 rather "
              "than the printed 1.35)";
    return p;
}

}  // namespace

std::vector<std::string> validate(const Problem& p) {
    std::vector<std::string> v;
    if (!(p.T > 0.0)) v.push_back("horizon T must be positive");
    if (!(p.beta > 1.0)) v.push_back("beta must exceed 1");
    if (p.c.empty() || p.tk.empty()) v.push_back("c and tk must be non-empty");
    if (p.c.size() != p.tk.size())
        v.push_back("c and tk length mismatch (" + std::to_string(p.c.size()) + " vs " +
                     std::to_string(p.tk.size()) + ")");
    if (!p.tk.empty()) {
        double prev = 0.0;
        bool ordered = true;
        for (double t : p.tk) {
            if (!(t > prev)) { ordered = false; break; }
            prev = t;
        }
        if (!ordered) v.push_back("nonlocal points must satisfy 0 < t_1 < ... < t_p");
        if (p.tk.back() > p.T) v.push_back("nonlocal points must not exceed T");
    }
    if (p.sum_c() == -1.0) v.push_back("sum of c equals -1");
    if (p.LF < 0.0) v.push_back("LF must be nonnegative");
    if (p.LG < 0.0) v.push_back("LG must be nonnegative");
    if (p.F.empty()) v.push_back("missing right-hand side F");
    if (p.G.empty()) v.push_back("missing kernel G");
    return v;
}

Problem load_problem(const std::string& text) {
    Problem p;
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw LoadError("malformed line (expected 'key = value'): '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (kv.count(key)) throw LoadError("duplicate key '" + key + "'");
        kv[key] = value;
    }

    static const std::vector<std::string> required = {"T",  "beta", "w0", "c", "tk",
                                                      "F",  "G",    "LF", "LG"};
    static const std::vector<std::string> optional = {"label", "gamma", "N", "tol", "max_iter"};
    for (const auto& [key, value] : kv) {
        bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                     std::find(optional.begin(), optional.end(), key) != optional.end();
        if (!known) throw LoadError("unknown key '" + key + "'");
    }
    for (const auto& key : required)
        if (!kv.count(key)) throw LoadError("missing key " + key);

    p.T = parse_real("T", kv["T"]);
    p.beta = parse_real("beta", kv["beta"]);
    p.w0 = parse_real("w0", kv["w0"]);
    p.c = parse_list("c", kv["c"]);
    p.tk = parse_list("tk", kv["tk"]);
    p.LF = parse_real("LF", kv["LF"]);
    p.LG = parse_real("LG", kv["LG"]);
    try {
        p.F = parse(kv["F"], kFVars);
    } catch (const ParseError& e) {
        throw LoadError(std::string("expression error in F: ") + e.what());
    }
    try {
        p.G = parse(kv["G"], kGVars);
    } catch (const ParseError& e) {
        throw LoadError(std::string("expression error in G: ") + e.what());
    }
    if (kv.count("label")) p.label = kv["label"];
    if (kv.count("gamma")) p.gamma = parse_real("gamma", kv["gamma"]);
    if (kv.count("N")) p.N = static_cast<int>(parse_real("N", kv["N"]));
    if (kv.count("tol")) p.tol = parse_real("tol", kv["tol"]);
    if (kv.count("max_iter")) p.max_iter = static_cast<int>(parse_real("max_iter", kv["max_iter"]));

    auto violations = validate(p);
    if (!violations.empty()) {
        std::string msg = "invalid problem:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw LoadError(msg);
    }
    return p;
}

std::string serialize(const Problem& p) {
    std::ostringstream out;
    out << "T = " << fmt(p.T) << "\n";
    out << "beta = " << fmt(p.beta) << "\n";
    out << "w0 = " << fmt(p.w0) << "\n";
    out << "c = ";
    for (std::size_t i = 0; i < p.c.size(); ++i) out << (i ? ", " : "") << fmt(p.c[i]);
    out << "\ntk = ";
    for (std::size_t i = 0; i < p.tk.size(); ++i) out << (i ? ", " : "") << fmt(p.tk[i]);
    out << "\nLF = " << fmt(p.LF) << "\n";
    out << "LG = " << fmt(p.LG) << "\n";
    out << "F = " << p.F.to_text() << "\n";
    out << "G = " << p.G.to_text() << "\n";
    if (!p.label.empty()) out << "label = " << p.label << "\n";
    if (p.gamma) out << "gamma = " << fmt(*p.gamma) << "\n";
    if (p.N) out << "N = " << *p.N << "\n";
    if (p.tol) out << "tol = " << fmt(*p.tol) << "\n";
    if (p.max_iter) out << "max_iter = " << *p.max_iter << "\n";
    return out.str();
}

Problem builtin_example(const std::string& id) {
    if (id == "ex1") return make_ex1(false);
    if (id == "ex1_corrected") return make_ex1(true);
    if (id == "ex2") return make_ex2();
    throw LoadError("unknown built-in example id '" + id + "'");
}

std::vector<std::string> builtin_ids() { return {"ex1", "ex1_corrected", "ex2"}; }

}  // namespace videq
