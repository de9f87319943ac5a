#include "chaosbound/chaos_json.hpp"

#include "chaosbound/errors.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace chaosbound {

using nlohmann::json;

json kernel_to_json(const SymmetricKernel& f) {
    json entries = json::array();
    const auto& b = f.basis();
    std::vector<int> idx;
    for (std::size_t r = 0; r < b.size(); ++r) {
        const double c = f.coeffs()[r];
        if (c == 0.0) continue;
        idx.clear();
        const auto e = b.exponents(r);
        for (int j = 0; j < f.dim(); ++j) idx.insert(idx.end(), e[static_cast<std::size_t>(j)], j);
        entries.push_back(json::array({idx, c}));
    }
    return json{{"order", f.order()}, {"dim", f.dim()}, {"entries", std::move(entries)}};
}

SymmetricKernel kernel_from_json(const json& j) {
    try {
        const int order = j.at("order").get<int>();
        const int dim = j.at("dim").get<int>();
        if (order < 0 || dim < 1) throw ArgumentError("kernel JSON: need order >= 0 and dim >= 1");
        SymmetricKernel f(order, dim);
        std::set<std::vector<int>> seen;
        for (const auto& entry : j.at("entries")) {
            if (!entry.is_array() || entry.size() != 2) throw ArgumentError("kernel JSON: entry must be [indices, value]");
            auto idx = entry.at(0).get<std::vector<int>>();
            const double c = entry.at(1).get<double>();
            if (static_cast<int>(idx.size()) != order) throw ArgumentError("kernel JSON: index list length != order");
            for (int i : idx) {
                if (i < 0 || i >= dim) throw ArgumentError("kernel JSON: index out of range");
            }
            std::sort(idx.begin(), idx.end());
            if (!seen.insert(idx).second) throw ArgumentError("kernel JSON: repeated multi-index");
            f.set(idx, c);
        }
        return f;
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("kernel JSON: ") + e.what());
    }
}

json expansion_to_json(const ChaosExpansion& Z) {
    json kernels = json::array();
    for (const auto& [q, f] : Z.kernels()) kernels.push_back(kernel_to_json(f));
    return json{{"dim", Z.dim()}, {"kernels", std::move(kernels)}};
}

ChaosExpansion expansion_from_json(const json& j) {
    try {
        const int dim = j.at("dim").get<int>();
        ChaosExpansion Z(dim);
        for (const auto& k : j.at("kernels")) {
            const auto f = kernel_from_json(k);
            if (f.dim() != dim) throw ArgumentError("expansion JSON: kernel dim differs from expansion dim");
            Z.add(f);
        }
        return Z;
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("expansion JSON: ") + e.what());
    }
}

}  // namespace chaosbound
