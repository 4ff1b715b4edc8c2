// Copyright 2026 The qsplit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsplit/circuit.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>

#include "qsplit/optics.h"

namespace qsplit {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(s.front())) return false;
    for (char c : s) {
        if (!alpha(c) && !digit(c)) return false;
    }
    return true;
}

std::vector<std::string> element_modes(const CircuitElement &e) {
    return std::visit(Overloaded{
                          [](const SourceElement &x) { return std::vector<std::string>{x.mode}; },
                          [](const BeamSplitterElement &x) {
                              return std::vector<std::string>{x.mode1, x.mode2};
                          },
                          [](const PhaseShifterElement &x) { return std::vector<std::string>{x.mode}; },
                          [](const DetectElement &x) { return std::vector<std::string>{x.mode}; },
                      },
                      e);
}

struct Token {
    std::string_view text;
    int column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

std::optional<double> parse_real(std::string_view s) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::optional<int> parse_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<Angle> parse_angle(std::string_view s) {
    if (s == "pi") return Angle::pi_times(1, 1);
    if (s.starts_with("pi/")) {
        auto den = parse_int(s.substr(3));
        if (!den || *den <= 0) return std::nullopt;
        return Angle::pi_times(1, *den);
    }
    if (auto star = s.find("*pi/"); star != std::string_view::npos) {
        auto num = parse_int(s.substr(0, star));
        auto den = parse_int(s.substr(star + 4));
        if (!num || !den || *den <= 0) return std::nullopt;
        return Angle::pi_times(*num, *den);
    }
    if (auto v = parse_real(s)) return Angle::literal(*v);
    return std::nullopt;
}

class LineParser {
   public:
    LineParser(int line, std::vector<Token> tokens) : line_(line), tokens_(std::move(tokens)) {}

    [[noreturn]] void fail(const Token &at, const std::string &msg) const {
        throw ParseError(line_, at.column, msg);
    }
    [[noreturn]] void fail(const std::string &msg) const { fail(tokens_.front(), msg); }

    const std::vector<Token> &tokens() const { return tokens_; }

    void expect_count(std::size_t n) const {
        if (tokens_.size() < n) {
            fail(tokens_.back(), "malformed line: expected " + std::to_string(n - 1) +
                                     " arguments after '" + std::string(tokens_.front().text) + "'");
        }
        if (tokens_.size() > n) {
            fail(tokens_[n], "malformed line: unexpected token '" + std::string(tokens_[n].text) + "'");
        }
    }

    /// Reads `key=value` tokens from position `from` on; every key in `keys`
    /// must be present exactly once.
    std::map<std::string, Token> keyed(std::size_t from, std::initializer_list<const char *> keys) const {
        std::map<std::string, Token> out;
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (std::size_t i = from; i < tokens_.size(); ++i) {
            auto tok = tokens_[i];
            auto eq = tok.text.find('=');
            if (eq == std::string_view::npos) {
                fail(tok, "malformed line: expected key=value, got '" + std::string(tok.text) + "'");
            }
            std::string key(tok.text.substr(0, eq));
            if (!allowed.contains(key)) {
                fail(tok, "malformed line: unknown parameter '" + key + "'");
            }
            if (out.contains(key)) {
                fail(tok, "malformed line: duplicate parameter '" + key + "'");
            }
            out.emplace(key, Token{tok.text.substr(eq + 1), tok.column + static_cast<int>(eq) + 1});
        }
        for (const char *k : keys) {
            if (!out.contains(k)) {
                fail(tokens_.back(), std::string("malformed line: missing parameter '") + k + "'");
            }
        }
        return out;
    }

    Angle angle(const Token &tok) const {
        auto a = parse_angle(tok.text);
        if (!a) fail(tok, "malformed angle '" + std::string(tok.text) + "'");
        return *a;
    }

    double unit_real(const Token &tok, const char *name) const {
        auto v = parse_real(tok.text);
        if (!v) fail(tok, std::string("malformed ") + name + " '" + std::string(tok.text) + "'");
        if (!in_unit_interval(*v)) fail(tok, std::string(name) + " out of range");
        return *v;
    }

   private:
    int line_;
    std::vector<Token> tokens_;
};

}  // namespace

Angle Angle::literal(double radians) { return Angle{radians, std::nullopt}; }

Angle Angle::pi_times(int numerator, int denominator) {
    if (denominator <= 0) {
        throw std::invalid_argument("angle denominator must be positive");
    }
    return Angle{std::numbers::pi * numerator / denominator, PiFraction{numerator, denominator}};
}

std::string Angle::str() const {
    if (!pi_fraction) return format_real(radians);
    auto [num, den] = *pi_fraction;
    if (num == 1 && den == 1) return "pi";
    if (num == 1) return "pi/" + std::to_string(den);
    return std::to_string(num) + "*pi/" + std::to_string(den);
}

int env_modes_allocated(const CircuitElement &e) {
    return std::visit(Overloaded{
                          [](const SourceElement &) { return 0; },
                          [](const BeamSplitterElement &x) { return x.kappa == 1.0 ? 0 : 2; },
                          [](const PhaseShifterElement &) { return 0; },
                          [](const DetectElement &x) { return x.epsilon == 1.0 ? 0 : 1; },
                      },
                      e);
}

void Circuit::validate() const {
    std::set<std::string> declared;
    for (const auto &m : modes) {
        if (!is_identifier(m)) throw std::invalid_argument("invalid mode name " + m);
        if (ModeRegistry::is_reserved_label(m)) throw std::invalid_argument("reserved mode name " + m);
        if (!declared.insert(m).second) throw std::invalid_argument("duplicate mode " + m);
    }
    std::set<std::string> touched, detected, sourced;
    for (const auto &e : elements) {
        for (const auto &m : element_modes(e)) {
            if (!declared.contains(m)) throw std::invalid_argument("unknown mode " + m);
            if (detected.contains(m)) throw std::invalid_argument("element after detect on mode " + m);
        }
        std::visit(Overloaded{
                       [&](const SourceElement &x) {
                           if (x.photons < 0) throw std::invalid_argument("negative photon number");
                           if (!sourced.insert(x.mode).second) {
                               throw std::invalid_argument("duplicate source on mode " + x.mode);
                           }
                           if (touched.contains(x.mode)) {
                               throw std::invalid_argument("source after other elements on mode " + x.mode);
                           }
                       },
                       [&](const BeamSplitterElement &x) {
                           if (x.mode1 == x.mode2) throw std::invalid_argument("beam splitter modes must differ");
                           if (!in_unit_interval(x.kappa)) throw std::invalid_argument("kappa out of range");
                           if (!std::isfinite(x.theta.radians)) throw std::invalid_argument("theta not finite");
                       },
                       [&](const PhaseShifterElement &x) {
                           if (!std::isfinite(x.theta.radians)) throw std::invalid_argument("theta not finite");
                       },
                       [&](const DetectElement &x) {
                           if (!in_unit_interval(x.epsilon)) throw std::invalid_argument("eps out of range");
                           detected.insert(x.mode);
                       },
                   },
                   e);
        for (const auto &m : element_modes(e)) touched.insert(m);
    }
}

OccupationVector Circuit::initial_occupation() const {
    ModeRegistry reg = registry();
    std::vector<int> counts(modes.size(), 0);
    for (const auto &e : elements) {
        if (const auto *src = std::get_if<SourceElement>(&e)) {
            counts[reg.at(src->mode).index] += src->photons;
        }
    }
    return OccupationVector(std::move(counts));
}

ParseError::ParseError(int line, int column, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    bool have_modes = false;
    std::set<std::string> sourced, touched, detected;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        LineParser lp(line_no, tokens);
        auto kw = tokens.front().text;

        auto mode_ref = [&](const Token &tok) {
            std::string m(tok.text);
            if (std::find(c.modes.begin(), c.modes.end(), m) == c.modes.end()) {
                lp.fail(tok, "unknown mode " + m);
            }
            if (detected.contains(m)) lp.fail(tok, "element after detect on mode " + m);
            return m;
        };

        if (kw == "modes") {
            if (have_modes) lp.fail("modes already declared");
            if (tokens.size() < 2) lp.fail("malformed line: 'modes' needs at least one mode");
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                std::string m(tokens[i].text);
                if (!is_identifier(m)) lp.fail(tokens[i], "invalid mode name '" + m + "'");
                if (ModeRegistry::is_reserved_label(m)) lp.fail(tokens[i], "reserved mode name " + m);
                if (std::find(c.modes.begin(), c.modes.end(), m) != c.modes.end()) {
                    lp.fail(tokens[i], "duplicate mode " + m);
                }
                c.modes.push_back(m);
            }
            have_modes = true;
            continue;
        }

        if (kw == "source") {
            lp.expect_count(3);
            auto m = mode_ref(tokens[1]);
            auto n = parse_int(tokens[2].text);
            if (!n || *n < 0) lp.fail(tokens[2], "malformed photon number '" + std::string(tokens[2].text) + "'");
            if (sourced.contains(m)) lp.fail(tokens[1], "duplicate source on mode " + m);
            if (touched.contains(m)) lp.fail(tokens[1], "source after other elements on mode " + m);
            sourced.insert(m);
            touched.insert(m);
            c.elements.emplace_back(SourceElement{m, *n});
        } else if (kw == "bs") {
            if (tokens.size() < 3) lp.fail(tokens.back(), "malformed line: 'bs' needs two modes");
            auto m1 = mode_ref(tokens[1]);
            auto m2 = mode_ref(tokens[2]);
            if (m1 == m2) lp.fail(tokens[2], "beam splitter modes must differ");
            auto kv = lp.keyed(3, {"theta", "kappa"});
            BeamSplitterElement bs{m1, m2, lp.angle(kv.at("theta")), lp.unit_real(kv.at("kappa"), "kappa")};
            touched.insert(m1);
            touched.insert(m2);
            c.elements.emplace_back(std::move(bs));
        } else if (kw == "ps") {
            if (tokens.size() < 2) lp.fail(tokens.back(), "malformed line: 'ps' needs a mode");
            auto m = mode_ref(tokens[1]);
            auto kv = lp.keyed(2, {"theta"});
            touched.insert(m);
            c.elements.emplace_back(PhaseShifterElement{m, lp.angle(kv.at("theta"))});
        } else if (kw == "detect") {
            if (tokens.size() < 2) lp.fail(tokens.back(), "malformed line: 'detect' needs a mode");
            auto m = mode_ref(tokens[1]);
            auto kv = lp.keyed(2, {"eps"});
            double eps = lp.unit_real(kv.at("eps"), "eps");
            touched.insert(m);
            detected.insert(m);
            c.elements.emplace_back(DetectElement{m, eps});
        } else {
            lp.fail("malformed line: unknown element '" + std::string(kw) + "'");
        }
    }
    c.validate();
    return c;
}

std::string print_circuit(const Circuit &c) {
    std::string out = "modes";
    for (const auto &m : c.modes) out += " " + m;
    out += "\n";
    for (const auto &e : c.elements) {
        out += std::visit(
            Overloaded{
                [](const SourceElement &x) { return "source " + x.mode + " " + std::to_string(x.photons); },
                [](const BeamSplitterElement &x) {
                    return "bs " + x.mode1 + " " + x.mode2 + " theta=" + x.theta.str() +
                           " kappa=" + format_real(x.kappa);
                },
                [](const PhaseShifterElement &x) { return "ps " + x.mode + " theta=" + x.theta.str(); },
                [](const DetectElement &x) { return "detect " + x.mode + " eps=" + format_real(x.epsilon); },
            },
            e);
        out += "\n";
    }
    return out;
}

ExecutionResult evolve(const Circuit &c, const SparseState &initial) {
    c.validate();
    const ModeRegistry reg = c.registry();
    if (initial.registry() != reg) {
        throw std::invalid_argument("initial state registry does not match circuit modes");
    }
    ExecutionResult result{initial, {}};
    SparseState &s = result.state;
    for (const auto &e : c.elements) {
        std::visit(Overloaded{
                       [](const SourceElement &) {},
                       [&](const BeamSplitterElement &x) {
                           auto m1 = reg.at(x.mode1);
                           auto m2 = reg.at(x.mode2);
                           s = env_modes_allocated(e) == 0
                                   ? apply_ideal_bs(s, m1, m2, x.theta.radians)
                                   : apply_lossy_bs(s, m1, m2, BeamSplitterParams(x.theta.radians, x.kappa));
                       },
                       [&](const PhaseShifterElement &x) {
                           s = apply_phase_shifter(s, reg.at(x.mode), x.theta.radians);
                       },
                       [&](const DetectElement &x) {
                           auto m = reg.at(x.mode);
                           if (env_modes_allocated(e) > 0) s = apply_loss_channel(s, m, x.epsilon);
                           DetectionRecord rec{x.mode, x.epsilon, {}};
                           if (!s.empty()) {
                               std::array<ModeId, 1> modes{m};
                               for (const auto &[counts, p] : outcome_distribution(s, modes)) {
                                   if (p > 0) rec.distribution.emplace_back(counts.front(), p);
                               }
                           }
                           result.detections.push_back(std::move(rec));
                       },
                   },
                   e);
    }
    return result;
}

ExecutionResult execute(const Circuit &c, int cutoff) {
    c.validate();
    auto initial = make_basis_state(c.registry(), c.initial_occupation(), cutoff);
    return evolve(c, initial);
}

}  // namespace qsplit
