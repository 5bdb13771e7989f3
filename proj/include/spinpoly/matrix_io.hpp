#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "spinpoly/matrix.hpp"

namespace spinpoly {

// JSON format: {"dim": n, "entries": [[re, im], ...]} with entries row-major.
inline void write_matrix_json(std::ostream& os, const ComplexMatrix& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            entries.push_back({m(r, c).real(), m(r, c).imag()});
    nlohmann::json doc{{"dim", m.rows()}, {"entries", std::move(entries)}};
    os << doc.dump() << '\n';
}

inline ComplexMatrix read_matrix_json(std::istream& is) {
    nlohmann::json doc;
    is >> doc;
    const auto dim = doc.at("dim").get<Eigen::Index>();
    const auto& entries = doc.at("entries");
    if (static_cast<Eigen::Index>(entries.size()) != dim * dim)
        throw std::runtime_error("read_matrix_json: entry count does not match dim^2");
    ComplexMatrix m(dim, dim);
    Eigen::Index i = 0;
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c, ++i)
            m(r, c) = {entries[i][0].get<double>(), entries[i][1].get<double>()};
    return m;
}

inline void write_matrix_text(std::ostream& os, const ComplexMatrix& m) {
    char buf[64];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "(%+.12e,%+.12e)", m(r, c).real(), m(r, c).imag());
            os << (c ? " " : "") << buf;
        }
        os << '\n';
    }
}

}  // namespace spinpoly
