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

#include "qsplit/sweep.h"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>

#include "qsplit/protocol.h"

namespace qsplit {

namespace {

double parse_number(std::string_view s) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw std::invalid_argument("malformed number '" + std::string(s) + "'");
    }
    return v;
}

void check_range(const Range &r, const char *name) {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(r.start) || !in_unit(r.stop)) {
        throw std::invalid_argument(std::string(name) + " range outside [0,1]");
    }
    if (r.stop < r.start) {
        throw std::invalid_argument(std::string(name) + " range has stop < start");
    }
    if (!(r.step > 0.0)) {
        throw std::invalid_argument(std::string(name) + " step must be positive");
    }
}

std::string render_point(double c0, double kappa, double eps) {
    const double c1 = std::sqrt(std::max(0.0, 1.0 - c0 * c0));
    const auto report = run_splitting(c0, c1, kappa, eps);
    std::string out;
    for (const auto &br : report.branches) {
        std::string row = format_double(c0) + "," + format_double(kappa) + "," + format_double(eps) + "," +
                          outcome_label(br.outcome) + "," + format_double(br.probability) + ",";
        if (br.fidelity) row += format_double(*br.fidelity);
        row += ",";
        if (br.fidelity_analytic) row += format_double(*br.fidelity_analytic);
        row += ",";
        if (br.fidelity && br.fidelity_analytic) {
            row += format_double(std::abs(*br.fidelity - *br.fidelity_analytic));
        }
        out += row + "\n";
    }
    return out;
}

}  // namespace

Range Range::parse(std::string_view text) {
    auto first = text.find(':');
    if (first == std::string_view::npos) {
        double v = parse_number(text);
        return Range{v, v, 1.0};
    }
    auto second = text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
        throw std::invalid_argument("range must be start:stop:step, got '" + std::string(text) + "'");
    }
    return Range{parse_number(text.substr(0, first)), parse_number(text.substr(first + 1, second - first - 1)),
                 parse_number(text.substr(second + 1))};
}

std::size_t Range::size() const {
    if (stop <= start) return 1;
    double span = (stop - start) / step;
    if (span > static_cast<double>(kMaxGridPoints)) return kMaxGridPoints + 1;
    return static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
}

std::vector<double> Range::values() const {
    const std::size_t n = size();
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = start + static_cast<double>(i) * step;
        if (std::abs(v - stop) < 1e-9 * step) v = stop;
        out.push_back(std::min(v, stop));
    }
    return out;
}

void SweepSpec::validate() const {
    check_range(c0, "c0");
    check_range(kappa, "kappa");
    check_range(eps, "eps");
    if (grid_size() > kMaxGridPoints) {
        throw std::invalid_argument("sweep grid exceeds " + std::to_string(kMaxGridPoints) + " points");
    }
}

std::size_t SweepSpec::grid_size() const {
    // Saturating product; each factor is at most kMaxGridPoints + 1.
    std::size_t n = c0.size();
    for (std::size_t f : {kappa.size(), eps.size()}) {
        n = n > kMaxGridPoints ? n : n * f;
    }
    return n;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sweep_csv(const SweepSpec &spec, unsigned workers) {
    spec.validate();
    struct Point {
        double c0, kappa, eps;
    };
    std::vector<Point> grid;
    grid.reserve(spec.grid_size());
    for (double c0 : spec.c0.values()) {
        for (double k : spec.kappa.values()) {
            for (double e : spec.eps.values()) grid.push_back({c0, k, e});
        }
    }

    std::vector<std::string> rows(grid.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(grid.size());
    auto work = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                rows[i] = render_point(grid[i].c0, grid[i].kappa, grid[i].eps);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(grid.size())));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }

    for (const auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }

    std::string out(kSweepHeader);
    out += "\n";
    for (const auto &r : rows) out += r;
    return out;
}

}  // namespace qsplit
