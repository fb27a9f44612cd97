#include "qjf/json_io.hpp"

#include <fstream>
#include <utility>

#include "qjf/errors.hpp"
#include "qjf/rational.hpp"

namespace qjf {

namespace {

// Translates schema violations (missing keys, wrong types) into the library's
// input error so the CLI maps them onto the domain-error exit code.
template <typename F>
auto schema(const char* what, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(std::string(what) + ": " + e.what());
    }
}

OrderedJson ulaurent_to_json(const ULaurent& f) {
    OrderedJson out = OrderedJson::array();
    for (const auto& [exp, c] : f.terms())
        out.push_back(OrderedJson::array({exp, rat_to_string(c)}));
    return out;
}

ULaurent ulaurent_from_json(const OrderedJson& j) {
    ULaurent out;
    for (const auto& term : j)
        out = out + ULaurent::monomial(term.at(0).get<int>(),
                                       rat_from_string(term.at(1).get<std::string>()));
    return out;
}

}  // namespace

OrderedJson series_to_json(const FourierSeries& s) {
    OrderedJson j;
    j["pole_order"] = s.pole_order();
    j["qmax"] = s.qmax();
    OrderedJson coeffs = OrderedJson::array();
    for (const auto& [d, c] : s.coeffs()) {
        if (c.is_zero()) continue;
        OrderedJson row;
        row["d"] = d;
        row["num"] = ulaurent_to_json(c.num());
        row["den"] = ulaurent_to_json(c.den());
        coeffs.push_back(std::move(row));
    }
    j["coeffs"] = std::move(coeffs);
    if (s.meta()) {
        OrderedJson m;
        m["weight"] = s.meta()->weight;
        m["index2"] = s.meta()->index2;
        m["level"] = s.meta()->level;
        j["meta"] = std::move(m);
    }
    return j;
}

FourierSeries series_from_json(const OrderedJson& j) {
    return schema("series", [&] {
        FourierSeries s(j.at("qmax").get<long>(), j.at("pole_order").get<long>());
        for (const auto& row : j.at("coeffs"))
            s.set_coeff(row.at("d").get<long>(),
                        PCoeff(ulaurent_from_json(row.at("num")),
                               ulaurent_from_json(row.at("den"))));
        if (j.contains("meta")) {
            const auto& m = j.at("meta");
            FormMeta meta;
            meta.weight = m.at("weight").get<long>();
            meta.index2 = m.at("index2").get<long>();
            meta.level = m.at("level").get<long>();
            s = s.with_meta(meta);
        }
        return s;
    });
}

OrderedJson genpoly_to_json(const GenPoly& f) {
    OrderedJson out = OrderedJson::array();
    for (const auto& [m, c] : f.terms()) {
        OrderedJson term;
        OrderedJson exps;
        for (Gen g : kAllGens)
            if (m.exp(g) != 0) exps[gen_name(g)] = m.exp(g);
        term["exps"] = std::move(exps);
        term["coeff"] = rat_to_string(c);
        out.push_back(std::move(term));
    }
    return out;
}

GenPoly genpoly_from_json(const OrderedJson& j) {
    return schema("generator polynomial", [&] {
        GenPoly out;
        for (const auto& term : j) {
            Mono m;
            for (const auto& [name, exp] : term.at("exps").items()) {
                auto g = gen_from_name(name);
                if (!g) throw UnknownGenerator(name);
                m.exp(*g) = exp.get<int>();
            }
            out.add_term(m, rat_from_string(term.at("coeff").get<std::string>()));
        }
        return out;
    });
}

OrderedJson laurent_view_to_json(const LaurentView& v) {
    OrderedJson j;
    j["pole_order"] = v.pole_order();
    j["qmax"] = v.qmax();
    j["rmin2"] = v.rmin2();
    j["rmax2"] = v.rmax2();
    j["modulo_constant"] = v.modulo_constant();
    OrderedJson entries = OrderedJson::array();
    for (const auto& [d, row] : v.rows())
        for (const auto& [u, c] : row) {
            OrderedJson e;
            e["d"] = d;
            e["u"] = u;
            e["c"] = rat_to_string(c);
            entries.push_back(std::move(e));
        }
    j["entries"] = std::move(entries);
    return j;
}

LaurentView laurent_view_from_json(const OrderedJson& j) {
    return schema("coefficient window", [&] {
        LaurentView v(j.at("pole_order").get<long>(), j.at("qmax").get<long>(),
                      j.at("rmin2").get<int>(), j.at("rmax2").get<int>());
        for (const auto& e : j.at("entries"))
            v.set(e.at("d").get<long>(), e.at("u").get<int>(),
                  rat_from_string(e.at("c").get<std::string>()));
        if (j.value("modulo_constant", false)) v.set_modulo_constant(true);
        return v;
    });
}

OrderedJson partition_to_json(const WeightedPartition& mu, const K3Model& model) {
    OrderedJson out = OrderedJson::array();
    for (const auto& [m, cls] : mu.parts) {
        OrderedJson part;
        part["part"] = m;
        part["class"] = model.label(cls);
        out.push_back(std::move(part));
    }
    return out;
}

WeightedPartition partition_from_json(const OrderedJson& j, const K3Model& model) {
    return schema("weighted partition", [&] {
        WeightedPartition mu;
        for (const auto& part : j)
            mu.parts.emplace_back(part.at("part").get<long>(),
                                  model.index(part.at("class").get<std::string>()));
        mu.canonicalize();
        return mu;
    });
}

OrderedJson fock_to_json(const FockVector& v, const K3Model& model) {
    OrderedJson out = OrderedJson::array();
    for (const auto& [mu, c] : v.terms()) {
        OrderedJson term;
        term["coeff"] = rat_to_string(c);
        term["partition"] = partition_to_json(mu, model);
        out.push_back(std::move(term));
    }
    return out;
}

FockVector fock_from_json(const OrderedJson& j, const K3Model& model) {
    return schema("fock vector", [&] {
        FockVector v;
        bool first = true;
        for (const auto& term : j) {
            WeightedPartition mu = partition_from_json(term.at("partition"), model);
            if (first) {
                v = FockVector(mu.n());
                first = false;
            }
            v.add_term(mu, rat_from_string(term.at("coeff").get<std::string>()));
        }
        return v;
    });
}

OrderedJson table_to_json(const GWTable& t, const K3Model& model) {
    OrderedJson out = OrderedJson::array();
    for (const auto& [key, entries] : t.rows())
        for (const auto& [dr, value] : entries) {
            OrderedJson row;
            row["g"] = key.g;
            row["n"] = key.n;
            row["d"] = dr.first;
            row["r"] = dr.second;
            OrderedJson ins = OrderedJson::array();
            for (const auto& mu : key.insertions)
                ins.push_back(partition_to_json(mu, model));
            row["insertions"] = std::move(ins);
            row["taut"] = key.taut;
            row["value"] = rat_to_string(value);
            out.push_back(std::move(row));
        }
    return out;
}

GWTable table_from_json(const OrderedJson& j, const K3Model& model) {
    return schema("invariant table", [&] {
        GWTable t;
        for (const auto& row : j) {
            GWSeriesKey key;
            key.g = row.at("g").get<long>();
            key.n = row.at("n").get<long>();
            for (const auto& mu : row.at("insertions"))
                key.insertions.push_back(partition_from_json(mu, model));
            key.taut = row.at("taut").get<std::string>();
            t.set(std::move(key), row.at("d").get<long>(), row.at("r").get<long>(),
                  rat_from_string(row.at("value").get<std::string>()));
        }
        return t;
    });
}

std::vector<std::vector<long>> gram_from_json(const OrderedJson& j) {
    return schema("gram matrix", [&] {
        std::vector<std::vector<long>> gram;
        for (const auto& row : j) {
            std::vector<long> r;
            for (const auto& entry : row) {
                if (!entry.is_number_integer())
                    throw MalformedInput("gram matrix entries must be integers");
                r.push_back(entry.get<long>());
            }
            gram.push_back(std::move(r));
        }
        return gram;
    });
}

OrderedJson load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    try {
        return OrderedJson::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInput(path + ": " + e.what());
    }
}

}  // namespace qjf
