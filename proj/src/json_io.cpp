#include "kuracycle/json_io.hpp"

#include <stdexcept>

namespace kuracycle {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("complex number must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json vector_to_json(const CVector& v)
{
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(complex_to_json(v[i]));
    return a;
}

CVector vector_from_json(const json& j)
{
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
    return v;
}

json facet_to_json(const Facet& f)
{
    json j;
    j["parity"] = f.odd() ? "odd" : "even";
    j["removed_edge"] = f.removed_edge ? json(*f.removed_edge) : json(nullptr);
    j["lambda"] = f.lambda;
    return j;
}

Facet facet_from_json(const json& j)
{
    Facet f;
    const std::string parity = j.at("parity").get<std::string>();
    f.lambda = j.at("lambda").get<std::vector<int>>();
    if (parity == "odd") {
        f.removed_edge = j.at("removed_edge").get<int>();
        f.N = static_cast<int>(f.lambda.size()) + 1;
    } else if (parity == "even") {
        if (!j.at("removed_edge").is_null())
            throw std::invalid_argument("even facets have no removed edge");
        f.N = static_cast<int>(f.lambda.size());
    } else {
        throw std::invalid_argument("parity must be \"odd\" or \"even\"");
    }
    f.validate();
    return f;
}

json solution_to_json(const TorusSolution& s)
{
    return json{{"facet_id", s.facet_id},
                {"x", vector_to_json(s.x)},
                {"residual_sub", s.residual_sub},
                {"residual_full", s.residual_full}};
}

json census_to_json(const CensusReport& r)
{
    return json{{"N", r.N},
                {"seed", r.seed},
                {"per_facet_counts", r.per_facet_counts},
                {"per_facet_trims", r.per_facet_trims},
                {"total", r.total},
                {"predicted", r.predicted},
                {"bound", r.bound},
                {"gap", r.gap},
                {"tol_residual", r.tol_residual},
                {"tol_dedup", r.tol_dedup},
                {"resample_count", r.resample_count},
                {"max_residual_full", r.max_residual_full},
                {"min_pairwise_distance", r.min_pairwise_distance}};
}

json prediction_to_json(const CountPrediction& c)
{
    return json{{"N", c.N},       {"per_facet", c.per_facet}, {"facets", c.facets},
                {"total", c.total}, {"bound", c.bkk_bound},    {"gap", c.gap}};
}

json witness_to_json(const KernelWitness& w)
{
    return json{{"facet_id", w.facet_id}, {"h", w.h}, {"point", w.point}, {"image", w.image}, {"verified", w.verified}};
}

json instance_to_json(const CycleInstance& inst)
{
    return json{{"N", inst.N}, {"omega", vector_to_json(inst.omega)}, {"a", complex_to_json(inst.a)}};
}

}  // namespace kuracycle
