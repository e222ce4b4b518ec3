// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#include "cli_config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "expsamp/csv.hpp"
#include "expsamp/expression.hpp"

namespace expsamp::cli {
namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

double to_double(const std::string& s, const std::string& where) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ConfigError(where + ": invalid number '" + s + "'");
    return v;
}

long long to_int(const std::string& s, const std::string& where) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError(where + ": invalid integer '" + s + "'");
    return v;
}

} // namespace

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ','))
        if (!item.empty()) out.push_back(to_double(item, "list"));
    if (out.empty()) throw ConfigError("list: no values in '" + text + "'");
    return out;
}

KernelDecl kernel_decl_from_name(const std::string& name) {
    KernelDecl d;
    d.name = name;
    if (name == "combined-b2") {
        d.kind = "combined";
        d.alpha = 0.75;
        d.a = 1.0;
        d.b = 1.0;
        d.inner_a = "bspline:2";
        d.inner_b = "bspline:2";
        return d;
    }
    if (name == "jackson") {
        d.kind = "jackson";
        return d;
    }
    const auto parts = split(name, ':');
    if (parts[0] == "bspline" && parts.size() == 2) {
        d.kind = "bspline";
        d.order = static_cast<int>(to_int(parts[1], "kernel '" + name + "'"));
        return d;
    }
    if (parts[0] == "jackson" && parts.size() == 3) {
        d.kind = "jackson";
        d.gamma = to_double(parts[1], "kernel '" + name + "'");
        d.beta = static_cast<int>(to_int(parts[2], "kernel '" + name + "'"));
        return d;
    }
    if (name.rfind("bspline", 0) == 0 && name.size() > 7) {
        d.kind = "bspline";
        d.order = static_cast<int>(to_int(name.substr(7), "kernel '" + name + "'"));
        return d;
    }
    throw ConfigError("unknown kernel '" + name + "'");
}

SignalDecl signal_decl_from_name(const std::string& name) {
    SignalDecl d;
    d.name = name;
    if (name == "demo") {
        d.breakpoints = {1.5, 3.5, 5.5};
        d.pieces = {"11/(2*t^2+1)", "3", "2", "12/(1+2*t)"};
        d.window_lo = 0.5;
        d.window_hi = 8.0;
        return d;
    }
    if (name == "step") {
        d.breakpoints = {2.0};
        d.pieces = {"0", "1"};
        d.window_lo = 0.5;
        d.window_hi = 8.0;
        return d;
    }
    if (name == "logt") {
        d.pieces = {"log(t)"};
        d.window_lo = 1.0;
        d.window_hi = 7.38905609893065; // e^2
        return d;
    }
    if (name == "linear") {
        d.pieces = {"t"};
        d.window_lo = 0.5;
        d.window_hi = 4.0;
        return d;
    }
    if (name == "const3") {
        d.pieces = {"3"};
        d.window_lo = 0.5;
        d.window_hi = 8.0;
        return d;
    }
    throw ConfigError("unknown signal '" + name + "'");
}

KernelPtr build_kernel(const KernelDecl& decl) {
    if (decl.kind.empty())
        throw ConfigError("kernel: a [kernel] section needs 'name' or 'kind'");
    if (decl.kind == "bspline") return make_bspline(decl.order);
    if (decl.kind == "jackson") return make_jackson(decl.gamma, decl.beta, decl.trunc_epsilon);
    if (decl.kind == "combined") {
        const auto da = kernel_decl_from_name(decl.inner_a);
        const auto db = kernel_decl_from_name(decl.inner_b);
        return build_combined(build_kernel(da), decl.a, build_kernel(db), decl.b, decl.alpha);
    }
    throw ConfigError("unknown kernel kind '" + decl.kind + "'");
}

PiecewiseSignal build_signal(const SignalDecl& decl) {
    if (decl.pieces.empty())
        throw ConfigError("signal: a [signal] section needs 'name' or 'pieces'");
    try {
        return make_signal(decl.breakpoints, decl.pieces, decl.window_lo, decl.window_hi);
    } catch (const ParseError& e) {
        throw ConfigError("signal piece: " + std::string(e.what()) + " at column " +
                          std::to_string(e.pos + 1));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("signal: ") + e.what());
    }
}

std::string signal_label(const SignalDecl& decl) {
    if (!decl.name.empty()) return decl.name;
    return "signal-" + std::to_string(decl.pieces.size()) + "p";
}

ExperimentConfig default_config() {
    ExperimentConfig c;
    c.kernel = kernel_decl_from_name("combined-b2");
    c.signal = signal_decl_from_name("demo");
    return c;
}

namespace {

using Entry = std::pair<std::string, int>; // value, line number

void apply_kernel_key(KernelDecl& k, const std::string& key, const std::string& value,
                      const std::string& where) {
    if (key == "name")
        k = kernel_decl_from_name(value);
    else if (key == "kind")
        k.kind = value;
    else if (key == "order")
        k.order = static_cast<int>(to_int(value, where));
    else if (key == "gamma")
        k.gamma = to_double(value, where);
    else if (key == "beta")
        k.beta = static_cast<int>(to_int(value, where));
    else if (key == "trunc_epsilon")
        k.trunc_epsilon = to_double(value, where);
    else if (key == "alpha")
        k.alpha = to_double(value, where);
    else if (key == "a")
        k.a = to_double(value, where);
    else if (key == "b")
        k.b = to_double(value, where);
    else if (key == "inner_a")
        k.inner_a = value;
    else if (key == "inner_b")
        k.inner_b = value;
    else
        throw ConfigError(where + ": unknown key '" + key + "' in [kernel]");
}

void apply_signal_key(SignalDecl& s, const std::string& key, const std::string& value,
                      const std::string& where) {
    if (key == "name") {
        s = signal_decl_from_name(value);
    } else if (key == "breakpoints") {
        s.breakpoints = parse_double_list(value);
    } else if (key == "pieces") {
        s.pieces.clear();
        for (const auto& piece : split(value, ';')) s.pieces.push_back(piece);
    } else if (key == "window") {
        const auto vals = parse_double_list(value);
        if (vals.size() != 2) throw ConfigError(where + ": window needs two values");
        s.window_lo = vals[0];
        s.window_hi = vals[1];
    } else {
        throw ConfigError(where + ": unknown key '" + key + "' in [signal]");
    }
}

void apply_run_key(ExperimentConfig& c, const std::string& key, const std::string& value,
                   const std::string& where) {
    if (key == "w")
        c.ws = parse_double_list(value);
    else if (key == "t")
        c.ts = parse_double_list(value);
    else if (key == "seed")
        c.seed = static_cast<std::uint64_t>(to_int(value, where));
    else if (key == "tol")
        c.tol = to_double(value, where);
    else if (key == "nu")
        c.nu = to_double(value, where);
    else if (key == "xi")
        c.xi = to_double(value, where);
    else if (key == "rho")
        c.rho = to_double(value, where);
    else if (key == "trials")
        c.trials = static_cast<int>(to_int(value, where));
    else if (key == "grid")
        c.grid = static_cast<int>(to_int(value, where));
    else if (key == "mmax")
        c.mmax = static_cast<int>(to_int(value, where));
    else if (key == "align_tol")
        c.align_tol = to_double(value, where);
    else if (key == "mode") {
        if (value != "random" && value != "adversarial")
            throw ConfigError(where + ": mode must be 'random' or 'adversarial'");
        c.mode = value;
    } else if (key == "out")
        c.out = value;
    else
        throw ConfigError(where + ": unknown key '" + key + "' in [run]");
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig config = default_config();
    std::istringstream is(text);
    std::string line, section;
    int line_no = 0;
    bool kernel_declared = false, signal_declared = false;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string where = origin + ":" + std::to_string(line_no);
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "kernel" && section != "signal" && section != "run")
                throw ConfigError(where + ": unknown section [" + section + "]");
            // A section is a full declaration, not a patch of the defaults.
            if (section == "kernel" && !kernel_declared) {
                config.kernel = KernelDecl{};
                kernel_declared = true;
            }
            if (section == "signal" && !signal_declared) {
                config.signal = SignalDecl{};
                signal_declared = true;
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigError(where + ": key outside of any section");
        try {
            if (section == "kernel")
                apply_kernel_key(config.kernel, key, value, where);
            else if (section == "signal")
                apply_signal_key(config.signal, key, value, where);
            else
                apply_run_key(config, key, value, where);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
    return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::string serialize_config(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "[kernel]\n";
    if (!c.kernel.name.empty()) os << "name = " << c.kernel.name << "\n";
    os << "kind = " << c.kernel.kind << "\n";
    if (c.kernel.kind == "bspline") {
        os << "order = " << c.kernel.order << "\n";
    } else if (c.kernel.kind == "jackson") {
        os << "gamma = " << format_number(c.kernel.gamma) << "\n";
        os << "beta = " << c.kernel.beta << "\n";
        os << "trunc_epsilon = " << format_number(c.kernel.trunc_epsilon) << "\n";
    } else {
        os << "alpha = " << format_number(c.kernel.alpha) << "\n";
        os << "a = " << format_number(c.kernel.a) << "\n";
        os << "b = " << format_number(c.kernel.b) << "\n";
        os << "inner_a = " << c.kernel.inner_a << "\n";
        os << "inner_b = " << c.kernel.inner_b << "\n";
    }
    os << "\n[signal]\n";
    if (!c.signal.name.empty()) os << "name = " << c.signal.name << "\n";
    if (!c.signal.breakpoints.empty()) {
        os << "breakpoints = ";
        for (std::size_t i = 0; i < c.signal.breakpoints.size(); ++i)
            os << (i ? ", " : "") << format_number(c.signal.breakpoints[i]);
        os << "\n";
    }
    os << "pieces = ";
    for (std::size_t i = 0; i < c.signal.pieces.size(); ++i)
        os << (i ? " ; " : "") << c.signal.pieces[i];
    os << "\n";
    os << "window = " << format_number(c.signal.window_lo) << ", "
       << format_number(c.signal.window_hi) << "\n";
    os << "\n[run]\n";
    os << "w = ";
    for (std::size_t i = 0; i < c.ws.size(); ++i) os << (i ? ", " : "") << format_number(c.ws[i]);
    os << "\n";
    if (!c.ts.empty()) {
        os << "t = ";
        for (std::size_t i = 0; i < c.ts.size(); ++i)
            os << (i ? ", " : "") << format_number(c.ts[i]);
        os << "\n";
    }
    os << "seed = " << c.seed << "\n";
    os << "tol = " << format_number(c.tol) << "\n";
    os << "nu = " << format_number(c.nu) << "\n";
    os << "xi = " << format_number(c.xi) << "\n";
    os << "rho = " << format_number(c.rho) << "\n";
    os << "trials = " << c.trials << "\n";
    os << "grid = " << c.grid << "\n";
    os << "mmax = " << c.mmax << "\n";
    os << "align_tol = " << format_number(c.align_tol) << "\n";
    os << "mode = " << c.mode << "\n";
    if (!c.out.empty()) os << "out = " << c.out << "\n";
    return os.str();
}

} // namespace expsamp::cli
