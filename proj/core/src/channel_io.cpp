// Copyright 2026 The qftverify Authors
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

#include "qftv/channel_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace qftv {

namespace {

constexpr const char *kMagic = "qftv-channel";

std::string hex(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

double parse_hex(const std::string &tok) {
    char *end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
        throw std::runtime_error("read_channel: bad number '" + tok + "'");
    }
    return v;
}

void expect_keyword(std::istream &in, const std::string &word) {
    std::string tok;
    if (!(in >> tok) || tok != word) {
        throw std::runtime_error("read_channel: expected '" + word + "', got '" + tok + "'");
    }
}

std::size_t read_count(std::istream &in, const char *what) {
    long long v = 0;
    if (!(in >> v) || v <= 0) {
        throw std::runtime_error(std::string("read_channel: bad ") + what);
    }
    return static_cast<std::size_t>(v);
}

}  // namespace

void write_channel(std::ostream &out, const KrausChannel &c) {
    auto n = static_cast<Eigen::Index>(c.dim());
    out << kMagic << ' ' << kChannelFormatVersion << '\n';
    out << "dim " << c.dim() << '\n';
    out << "kraus " << c.kraus_count() << '\n';
    for (std::size_t i = 0; i < c.kraus_count(); ++i) {
        const CMatrix &a = c.kraus_ops()[i];
        out << "op " << i << '\n';
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index col = 0; col < n; ++col) {
                if (col > 0) {
                    out << ' ';
                }
                out << hex(a(r, col).real()) << ' ' << hex(a(r, col).imag());
            }
            out << '\n';
        }
    }
}

KrausChannel read_channel(std::istream &in) {
    expect_keyword(in, kMagic);
    int version = 0;
    if (!(in >> version)) {
        throw std::runtime_error("read_channel: missing format version");
    }
    if (version != kChannelFormatVersion) {
        throw std::runtime_error("read_channel: unsupported format version " +
                                 std::to_string(version));
    }
    expect_keyword(in, "dim");
    std::size_t dim = read_count(in, "dim");
    expect_keyword(in, "kraus");
    std::size_t count = read_count(in, "kraus count");
    auto n = static_cast<Eigen::Index>(dim);
    std::vector<CMatrix> ops;
    ops.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        expect_keyword(in, "op");
        std::size_t idx = 0;
        if (!(in >> idx) || idx != i) {
            throw std::runtime_error("read_channel: operators out of order");
        }
        CMatrix a(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index col = 0; col < n; ++col) {
                std::string re, im;
                if (!(in >> re >> im)) {
                    throw std::runtime_error("read_channel: truncated operator data");
                }
                a(r, col) = Complex(parse_hex(re), parse_hex(im));
            }
        }
        ops.push_back(std::move(a));
    }
    return KrausChannel(std::move(ops));
}

void save_channel(const std::string &path, const KrausChannel &c) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("save_channel: cannot open " + path);
    }
    write_channel(out, c);
    if (!out) {
        throw std::runtime_error("save_channel: write failed for " + path);
    }
}

KrausChannel load_channel(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_channel: cannot open " + path);
    }
    return read_channel(in);
}

}  // namespace qftv
