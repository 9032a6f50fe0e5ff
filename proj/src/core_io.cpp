#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tanglekit/core.hpp"

namespace tk {

namespace {

using nlohmann::json;

cx parse_entry(const json& e) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw std::runtime_error("state file: each entry must be a [re, im] pair");
    return cx(e[0].get<double>(), e[1].get<double>());
}

}  // namespace

AnyState load_state_json(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("state file: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j.contains("dims") || !j.contains("data"))
        throw std::runtime_error("state file: need keys kind, dims, data");

    const std::string kind = j["kind"].get<std::string>();
    Dims dims;
    for (const auto& d : j["dims"]) {
        const int di = d.get<int>();
        if (di < 1) throw std::runtime_error("state file: dims must be positive");
        dims.push_back(di);
    }
    const int D = dim_prod(dims);
    if (D < 1 || D > 4096) throw std::runtime_error("state file: total dimension out of range");

    if (kind == "pure") {
        const auto& data = j["data"];
        if (!data.is_array() || static_cast<int>(data.size()) != D)
            throw std::runtime_error("state file: pure data length != product of dims");
        Vec v(D);
        for (int i = 0; i < D; ++i) v(i) = parse_entry(data[i]);
        const double n = v.norm();
        if (std::abs(n - 1.0) > 1e-6)
            throw std::runtime_error("state file: pure state norm off by more than 1e-6");
        v /= n;
        return PureState(std::move(v), std::move(dims));
    }
    if (kind == "mixed") {
        const auto& data = j["data"];
        if (!data.is_array() || static_cast<int>(data.size()) != D)
            throw std::runtime_error("state file: mixed data must have one row per dimension");
        Mat m(D, D);
        for (int r = 0; r < D; ++r) {
            if (!data[r].is_array() || static_cast<int>(data[r].size()) != D)
                throw std::runtime_error("state file: mixed data row length != dimension");
            for (int c = 0; c < D; ++c) m(r, c) = parse_entry(data[r][c]);
        }
        const double tr = m.trace().real();
        if (std::abs(tr - 1.0) > 1e-6)
            throw std::runtime_error("state file: trace off by more than 1e-6");
        m /= tr;
        try {
            return DensityMatrix(std::move(m), std::move(dims));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(std::string("state file: ") + e.what());
        }
    }
    throw std::runtime_error("state file: kind must be \"pure\" or \"mixed\"");
}

AnyState load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file: " + path);
    return load_state_json(in);
}

void save_state_json(const AnyState& st, std::ostream& out) {
    json j;
    const Dims dims = state_dims(st);
    j["dims"] = dims;
    if (std::holds_alternative<PureState>(st)) {
        j["kind"] = "pure";
        const Vec& v = std::get<PureState>(st).a;
        json data = json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i)
            data.push_back({v(i).real(), v(i).imag()});
        j["data"] = std::move(data);
    } else {
        j["kind"] = "mixed";
        const Mat& m = std::get<DensityMatrix>(st).m;
        json data = json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                row.push_back({m(r, c).real(), m(r, c).imag()});
            data.push_back(std::move(row));
        }
        j["data"] = std::move(data);
    }
    out << j.dump(2) << "\n";
}

}  // namespace tk
