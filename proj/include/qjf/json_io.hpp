#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qjf/assembly.hpp"
#include "qjf/fock.hpp"
#include "qjf/genpoly.hpp"
#include "qjf/k3_model.hpp"
#include "qjf/laurent_view.hpp"
#include "qjf/series.hpp"

namespace qjf {

// JSON codecs for every value the command-line tool reads or writes.  Keys
// are emitted in a fixed order (ordered_json) so identical values serialize
// to identical bytes; all rationals are decimal strings "a/b".  The series
// metadata block carries (weight, index2, level) only, so a parsed series
// comes back with the default form-kind tag.
using OrderedJson = nlohmann::ordered_json;

// Truncated Fourier series: {"pole_order", "qmax", "coeffs": [{"d", "num",
// "den"}], "meta"?}, each num/den a list of [u_exp, "a/b"] pairs in
// ascending exponent order.
OrderedJson series_to_json(const FourierSeries& s);
FourierSeries series_from_json(const OrderedJson& j);

// Generator-ring polynomial: list of {"exps": {name: exponent != 0}, "coeff"}.
OrderedJson genpoly_to_json(const GenPoly& f);
GenPoly genpoly_from_json(const OrderedJson& j);

// Coefficient window: {"pole_order", "qmax", "rmin2", "rmax2",
// "modulo_constant", "entries": [{"d", "u", "c"}]}.
OrderedJson laurent_view_to_json(const LaurentView& v);
LaurentView laurent_view_from_json(const OrderedJson& j);

// Weighted partition: [{"part": m, "class": label}, ...].
OrderedJson partition_to_json(const WeightedPartition& mu, const K3Model& model);
WeightedPartition partition_from_json(const OrderedJson& j, const K3Model& model);

// Fock vector: [{"coeff": "a/b", "partition": [...]}, ...].
OrderedJson fock_to_json(const FockVector& v, const K3Model& model);
FockVector fock_from_json(const OrderedJson& j, const K3Model& model);

// Invariant table: [{"g", "n", "d", "r", "insertions", "taut", "value"}, ...].
OrderedJson table_to_json(const GWTable& t, const K3Model& model);
GWTable table_from_json(const OrderedJson& j, const K3Model& model);

// Integer Gram matrix as a list of equal-length integer rows.
std::vector<std::vector<long>> gram_from_json(const OrderedJson& j);

// Parses a file; throws MalformedInput naming the path on parse failure.
OrderedJson load_json_file(const std::string& path);

}  // namespace qjf
