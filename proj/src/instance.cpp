#include "pqm/instance.hpp"

#include "pqm/error.hpp"

#include <algorithm>

namespace pqm {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what)
{
    throw Error(ErrorCode::SchemaError, where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where)
{
    if (!obj.is_object())
        schema(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        schema(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string as_string(const Json& j, const std::string& where)
{
    if (!j.is_string())
        schema(where, "expected a string");
    return j.get<std::string>();
}

void check_header(const Json& doc, std::string_view format)
{
    if (!doc.is_object())
        schema("document", "expected an object");
    if (as_string(field(doc, "format", "document"), "format") != format)
        schema("format", "expected '" + std::string(format) + "'");
    const auto& v = field(doc, "version", "document");
    if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
        schema("version", "unsupported version");
}

Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, std::string("malformed JSON: ") + e.what());
    }
}

// Runs `fn`, rethrowing library errors as ValidationError at `where`.
template <class Fn>
auto located(const std::string& where, Fn&& fn)
{
    try {
        return fn();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError || e.code() == ErrorCode::ValidationError)
            throw;
        throw Error(ErrorCode::ValidationError, where + ": " + e.what());
    }
}

FinitePoset slice_from_json(const Json& j, const std::string& where)
{
    const auto& elems = field(j, "elements", where);
    const auto& less = field(j, "less", where);
    if (!elems.is_array())
        schema(where + ".elements", "expected an array");
    if (!less.is_array())
        schema(where + ".less", "expected an array");
    std::vector<std::string> names;
    for (std::size_t k = 0; k < elems.size(); ++k)
        names.push_back(as_string(elems[k], where + ".elements[" + std::to_string(k) + "]"));
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t k = 0; k < less.size(); ++k) {
        const std::string w = where + ".less[" + std::to_string(k) + "]";
        if (!less[k].is_array() || less[k].size() != 2)
            schema(w, "expected a pair");
        pairs.emplace_back(as_string(less[k][0], w), as_string(less[k][1], w));
    }
    return located(where, [&] { return FinitePoset(names, pairs); });
}

Json slice_to_json(const FinitePoset& p)
{
    Json less = Json::array();
    std::vector<std::pair<std::string, std::string>> pairs;
    for (auto [a, b] : p.relation())
        pairs.emplace_back(p.name(a), p.name(b));
    std::sort(pairs.begin(), pairs.end());
    for (auto& [a, b] : pairs)
        less.push_back(Json::array({a, b}));
    return Json{{"elements", p.elements()}, {"less", less}};
}

// Name table to index map; every source element must be listed.
IndexMap table_from_json(const Json& j, const FinitePoset& from, const FinitePoset& to, const std::string& where)
{
    if (!j.is_object())
        schema(where, "expected an object mapping names to names");
    IndexMap m(from.size(), 0);
    std::vector<char> seen(from.size(), 0);
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto src = from.index_of(it.key());
        if (!src)
            throw Error(ErrorCode::ValidationError, where + ": unknown source element '" + it.key() + "'");
        const auto name = as_string(it.value(), where + "." + it.key());
        auto dst = to.index_of(name);
        if (!dst)
            throw Error(ErrorCode::ValidationError, where + ": unknown target element '" + name + "'");
        m[*src] = *dst;
        seen[*src] = 1;
    }
    for (std::size_t x = 0; x < from.size(); ++x)
        if (!seen[x])
            throw Error(ErrorCode::ValidationError, where + ": PartialStructureMap: no image for '" + from.name(x) + "'");
    return m;
}

Json table_to_json(const IndexMap& m, const FinitePoset& from, const FinitePoset& to)
{
    Json j = Json::object();
    for (std::size_t x = 0; x < m.size(); ++x)
        j[from.name(x)] = to.name(m[x]);
    return j;
}

} // namespace

PersistencePoset poset_from_json(const Json& j, const std::string& where)
{
    const auto& slices_j = field(j, "slices", where);
    const auto& maps_j = field(j, "maps", where);
    if (!slices_j.is_array() || slices_j.empty())
        schema(where + ".slices", "expected a nonempty array");
    if (!maps_j.is_array() || maps_j.size() + 1 != slices_j.size())
        schema(where + ".maps", "expected one map per consecutive pair of slices");
    std::vector<FinitePoset> slices;
    for (std::size_t i = 0; i < slices_j.size(); ++i)
        slices.push_back(slice_from_json(slices_j[i], where + ".slices[" + std::to_string(i) + "]"));
    std::vector<IndexMap> maps;
    for (std::size_t i = 0; i + 1 < slices.size(); ++i) {
        const std::string w = where + ".maps[" + std::to_string(i) + "]";
        maps.push_back(table_from_json(maps_j[i], slices[i], slices[i + 1], w));
        if (!is_monotone(slices[i], slices[i + 1], maps.back()))
            throw Error(ErrorCode::ValidationError, w + ": NonMonotoneStructureMap: structure map is not monotone");
    }
    return located(where, [&] { return PersistencePoset(std::move(slices), std::move(maps)); });
}

Json poset_to_json(const PersistencePoset& pp)
{
    Json slices = Json::array(), maps = Json::array();
    for (const auto& s : pp.slices())
        slices.push_back(slice_to_json(s));
    for (std::size_t i = 0; i < pp.maps().size(); ++i)
        maps.push_back(table_to_json(pp.maps()[i], pp.slices()[i], pp.slices()[i + 1]));
    return Json{{"slices", slices}, {"maps", maps}};
}

InstanceDocument instance_from_json(const Json& doc)
{
    check_header(doc, kInstanceFormat);
    auto x = poset_from_json(field(doc, "X", "document"), "X");
    auto y = poset_from_json(field(doc, "Y", "document"), "Y");
    if (x.max_index() != y.max_index())
        throw Error(ErrorCode::ValidationError, "X and Y have different numbers of slices");
    const auto& f_j = field(doc, "f", "document");
    if (!f_j.is_array() || f_j.size() != x.slice_count())
        schema("f", "expected one map per slice");
    std::vector<IndexMap> f;
    for (std::size_t i = 0; i < f_j.size(); ++i) {
        const std::string w = "f[" + std::to_string(i) + "]";
        f.push_back(table_from_json(f_j[i], x.slice(i), y.slice(i), w));
        if (!is_monotone(x.slice(i), y.slice(i), f.back()))
            throw Error(ErrorCode::ValidationError, w + ": NotMonotone: slice map is not monotone");
    }
    InstanceDocument out{located("f", [&] { return PersistenceMap(std::move(x), std::move(y), std::move(f)); }),
                         std::nullopt};
    if (auto it = doc.find("scale"); it != doc.end() && !it->is_null()) {
        const auto& o = field(*it, "origin", "scale");
        const auto& s = field(*it, "step", "scale");
        if (!o.is_number() || !s.is_number())
            schema("scale", "origin and step must be numbers");
        TimeScale scale{o.get<double>(), s.get<double>()};
        if (!(scale.step > 0))
            throw Error(ErrorCode::ValidationError, "scale: step must be positive");
        out.scale = scale;
    }
    return out;
}

InstanceDocument parse_instance(std::string_view text)
{
    return instance_from_json(parse_json(text));
}

Json instance_to_json(const InstanceDocument& doc)
{
    const auto& f = doc.map;
    Json maps = Json::array();
    for (std::size_t i = 0; i <= f.max_index(); ++i)
        maps.push_back(table_to_json(f.slices()[i], f.source().slice(i), f.target().slice(i)));
    Json j{{"format", kInstanceFormat},
           {"version", kFormatVersion},
           {"X", poset_to_json(f.source())},
           {"Y", poset_to_json(f.target())},
           {"f", maps}};
    if (doc.scale)
        j["scale"] = Json{{"origin", doc.scale->origin}, {"step", doc.scale->step}};
    return j;
}

std::string serialize_instance(const InstanceDocument& doc)
{
    return instance_to_json(doc).dump(2) + "\n";
}

std::string serialize_poset(const PersistencePoset& pp)
{
    Json j = poset_to_json(pp);
    j["format"] = kPosetFormat;
    j["version"] = kFormatVersion;
    return j.dump(2) + "\n";
}

PersistencePoset parse_poset(std::string_view text)
{
    const Json doc = parse_json(text);
    check_header(doc, kPosetFormat);
    return poset_from_json(doc, "poset");
}

std::size_t CoverTower::max_index() const
{
    return sets.empty() ? 0 : sets.begin()->second.size() - 1;
}

CoverTower parse_cover(std::string_view text)
{
    const Json doc = parse_json(text);
    check_header(doc, kCoverFormat);
    const auto& sets = field(doc, "sets", "document");
    if (!sets.is_object() || sets.empty())
        schema("sets", "expected a nonempty object");
    CoverTower cover;
    std::size_t length = 0;
    for (auto it = sets.begin(); it != sets.end(); ++it) {
        const std::string w = "sets." + it.key();
        if (it.key().empty() || it.key().find('+') != std::string::npos)
            schema(w, "set names must be nonempty and must not contain '+'");
        if (!it->is_array() || it->empty())
            schema(w, "expected a nonempty array of point sets");
        if (length == 0)
            length = it->size();
        else if (it->size() != length)
            schema(w, "all sets need the same number of indices");
        auto& seq = cover.sets[it.key()];
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto& pts = (*it)[i];
            if (!pts.is_array())
                schema(w + "[" + std::to_string(i) + "]", "expected an array of point ids");
            std::set<std::string> s;
            for (const auto& p : pts) {
                if (p.is_string())
                    s.insert(p.get<std::string>());
                else if (p.is_number_integer())
                    s.insert(std::to_string(p.get<long long>()));
                else
                    schema(w + "[" + std::to_string(i) + "]", "point ids are strings or integers");
            }
            seq.push_back(std::move(s));
        }
    }
    return cover;
}

std::string serialize_cover(const CoverTower& cover)
{
    Json sets = Json::object();
    for (const auto& [name, seq] : cover.sets) {
        Json a = Json::array();
        for (const auto& s : seq)
            a.push_back(Json(std::vector<std::string>(s.begin(), s.end())));
        sets[name] = a;
    }
    return Json{{"format", kCoverFormat}, {"version", kFormatVersion}, {"sets", sets}}.dump(2) + "\n";
}

PersistencePoset cover_to_pposet(const CoverTower& cover, std::size_t max_arity)
{
    std::vector<std::string> names;
    for (const auto& [name, seq] : cover.sets)
        names.push_back(name);
    const std::size_t T = cover.max_index();
    for (const auto& [name, seq] : cover.sets)
        for (std::size_t i = 0; i < T; ++i)
            if (!std::includes(seq[i + 1].begin(), seq[i + 1].end(), seq[i].begin(), seq[i].end()))
                throw Error(ErrorCode::NotNested,
                            "set '" + name + "' shrinks from index " + std::to_string(i) + " to " + std::to_string(i + 1));
    const std::size_t limit = max_arity == 0 ? names.size() : max_arity;

    std::vector<FinitePoset> slices;
    std::vector<std::vector<std::vector<std::size_t>>> labels_per_slice;
    for (std::size_t i = 0; i <= T; ++i) {
        // Depth-first over label sets in increasing name order, pruning empty intersections.
        std::vector<std::vector<std::size_t>> labels;
        std::vector<std::size_t> current;
        auto extend = [&](auto&& self, std::size_t start, const std::set<std::string>& meet) -> void {
            for (std::size_t s = start; s < names.size(); ++s) {
                std::set<std::string> next;
                const auto& u = cover.sets.at(names[s])[i];
                if (current.empty())
                    next = u;
                else
                    std::set_intersection(meet.begin(), meet.end(), u.begin(), u.end(),
                                          std::inserter(next, next.end()));
                if (next.empty())
                    continue;
                current.push_back(s);
                labels.push_back(current);
                if (current.size() < limit)
                    self(self, s + 1, next);
                current.pop_back();
            }
        };
        extend(extend, 0, {});

        std::vector<std::string> elems;
        for (const auto& l : labels) {
            std::string e;
            for (auto s : l)
                e += (e.empty() ? "" : "+") + names[s];
            elems.push_back(e);
        }
        std::vector<std::pair<std::string, std::string>> pairs;
        for (std::size_t a = 0; a < labels.size(); ++a)
            for (std::size_t b = 0; b < labels.size(); ++b)
                if (labels[a].size() > labels[b].size() &&
                    std::includes(labels[a].begin(), labels[a].end(), labels[b].begin(), labels[b].end()))
                    pairs.emplace_back(elems[a], elems[b]);
        slices.emplace_back(elems, pairs);
    }
    std::vector<IndexMap> maps;
    for (std::size_t i = 0; i < T; ++i) {
        IndexMap m;
        for (const auto& e : slices[i].elements())
            m.push_back(slices[i + 1].require(e));
        maps.push_back(std::move(m));
    }
    return PersistencePoset(std::move(slices), std::move(maps));
}

InstanceDocument random_instance(std::uint64_t seed, const GeneratorLimits& limits)
{
    Rng rng(seed);
    return InstanceDocument{random_persistence_map(rng, limits), std::nullopt};
}

Json to_json(ExtNat v)
{
    return v.is_infinite() ? Json("inf") : Json(v.value());
}

Json to_json(const Barcode& b)
{
    Json a = Json::array();
    for (const auto& bar : b)
        a.push_back(Json::array({bar.birth, to_json(bar.death)}));
    return a;
}

Json certificate_to_json(const TheoremCertificate& c, const std::optional<TimeScale>& scale)
{
    auto ext_list = [](const std::vector<ExtNat>& v) {
        Json a = Json::array();
        for (auto x : v)
            a.push_back(to_json(x));
        return a;
    };
    auto barcodes = [](const std::vector<Barcode>& v) {
        Json a = Json::array();
        for (const auto& b : v)
            a.push_back(to_json(b));
        return a;
    };
    Json tracks = Json::array();
    for (const auto& t : c.tracks)
        tracks.push_back(Json{{"label", t.label},
                              {"birth", t.track.birth},
                              {"epsilon", to_json(t.epsilon)},
                              {"per_degree", ext_list(t.per_degree)}});
    Json j{{"format", kCertificateFormat},
           {"version", kFormatVersion},
           {"field", c.field},
           {"kmax", c.kmax},
           {"m", c.m},
           {"tracks", tracks},
           {"epsilon", to_json(c.epsilon)},
           {"bound", to_json(c.bound)},
           {"distances", ext_list(c.distances)},
           {"barcodes", Json{{"X", barcodes(c.source_barcodes)}, {"Y", barcodes(c.target_barcodes)}}},
           {"induced_ranks", c.induced_ranks},
           {"verdict", to_string(c.verdict)},
           {"ratio", c.ratio ? Json(*c.ratio) : Json(nullptr)}};
    if (scale) {
        auto timed = [&](ExtNat v) { return v.is_infinite() ? Json("inf") : Json(scale->span(v.value())); };
        Json d = Json::array();
        for (auto x : c.distances)
            d.push_back(timed(x));
        j["scale"] = Json{{"origin", scale->origin},
                          {"step", scale->step},
                          {"epsilon", timed(c.epsilon)},
                          {"bound", timed(c.bound)},
                          {"distances", d}};
    }
    return j;
}

} // namespace pqm
