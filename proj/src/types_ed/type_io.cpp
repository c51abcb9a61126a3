#include "regracut/type_io.hpp"

#include "regracut/error.hpp"
#include "regracut/io.hpp"

#include <string>

namespace regracut {

namespace {

using nlohmann::json;

json label_to_json(LabelMask mask, TypeKind kind)
{
    json out = json::array();
    for (int c = 0; c < max_type_colors; ++c)
        if (mask & label_bit(c)) {
            if (kind == TypeKind::rtype)
                out.push_back(c + 1);
            else
                out.push_back(std::string(to_token(static_cast<Arrow>(c))));
        }
    return out;
}

LabelMask label_from_json(const json & doc, const TypeSpace & space)
{
    if (! doc.is_array())
        fail(ErrorKind::ParseError, "a label must be a JSON array");
    LabelMask mask = 0;
    for (const auto & item : doc) {
        if (space.kind == TypeKind::rtype) {
            if (! item.is_number_integer())
                fail(ErrorKind::ParseError, "r-type labels hold color numbers");
            const int c = item.get<int>();
            if (c < 1 || c > space.r)
                fail(ErrorKind::LabelOutOfRange, "color " + std::to_string(c) + " outside 1.." + std::to_string(space.r));
            mask |= label_bit(c - 1);
        } else {
            if (! item.is_string())
                fail(ErrorKind::ParseError, "dir-type labels hold state tokens");
            const auto a = arrow_from_token(item.get<std::string>());
            if (! a)
                fail(ErrorKind::ParseError, "unknown state '" + item.get<std::string>() + "'");
            mask |= label_bit(static_cast<ColorIndex>(*a));
        }
    }
    return mask;
}

TypeSpace space_from_json(const json & doc)
{
    const std::string kind = doc.value("kind", "");
    if (kind == "rtype") {
        if (! doc.contains("r") || ! doc["r"].is_number_integer())
            fail(ErrorKind::ParseError, "r-type needs an integer \"r\"");
        return TypeSpace::rtypes(doc["r"].get<int>());
    }
    if (kind == "dirtype") {
        const auto p = palette_from_name(doc.value("palette", "P0"));
        if (! p)
            fail(ErrorKind::ParseError, "unknown palette");
        return TypeSpace::dirtypes(*p);
    }
    fail(ErrorKind::ParseError, "\"kind\" must be rtype or dirtype");
}

void space_to_json(json & out, const TypeSpace & space)
{
    out["kind"] = std::string(to_string(space.kind));
    if (space.kind == TypeKind::rtype)
        out["r"] = space.r;
    else
        out["palette"] = std::string(to_string(space.palette));
}

} // namespace

json type_to_json(const TypeGraph & k)
{
    json out;
    space_to_json(out, k.space());
    out["k"] = k.k();
    out["self"] = json::array();
    for (int x = 0; x < k.k(); ++x)
        out["self"].push_back(label_to_json(k.label(x, x), k.kind()));
    out["edges"] = json::array();
    for (int x = 0; x < k.k(); ++x)
        for (int y = x + 1; y < k.k(); ++y) {
            out["edges"].push_back({{"u", x}, {"v", y}, {"labels", label_to_json(k.label(x, y), k.kind())}});
            if (k.label(y, x) != mirror(k.label(x, y), k.kind()))
                out["edges"].push_back({{"u", y}, {"v", x}, {"labels", label_to_json(k.label(y, x), k.kind())}});
        }
    return out;
}

TypeGraph type_from_json(const json & doc)
{
    if (! doc.is_object())
        fail(ErrorKind::ParseError, "a type must be a JSON object");
    const TypeSpace space = space_from_json(doc);
    if (! doc.contains("k") || ! doc["k"].is_number_integer())
        fail(ErrorKind::ParseError, "type needs an integer \"k\"");
    TypeGraph k(space, doc["k"].get<int>());
    const json self = doc.value("self", json::array());
    if (! self.is_array() || static_cast<int>(self.size()) != k.k())
        fail(ErrorKind::ParseError, "\"self\" must list one label per vertex");
    for (int x = 0; x < k.k(); ++x)
        k.set_self(x, label_from_json(self[static_cast<std::size_t>(x)], space));

    const json edges = doc.value("edges", json::array());
    if (! edges.is_array())
        fail(ErrorKind::ParseError, "\"edges\" must be an array");
    std::vector<char> explicit_entry(static_cast<std::size_t>(k.k()) * static_cast<std::size_t>(k.k()), 0);
    for (const auto & e : edges) {
        if (! e.is_object() || ! e.contains("u") || ! e.contains("v") || ! e.contains("labels")
            || ! e["u"].is_number_integer() || ! e["v"].is_number_integer())
            fail(ErrorKind::ParseError, "each edge needs integer \"u\", \"v\" and \"labels\"");
        const int u = e["u"].get<int>(), v = e["v"].get<int>();
        if (u < 0 || v < 0 || u >= k.k() || v >= k.k() || u == v)
            fail(ErrorKind::ParseError, "edge (" + std::to_string(u) + "," + std::to_string(v) + ") is not a pair of type vertices");
        const LabelMask mask = label_from_json(e["labels"], space);
        k.set_raw(u, v, mask);
        explicit_entry[static_cast<std::size_t>(u * k.k() + v)] = 1;
        if (! explicit_entry[static_cast<std::size_t>(v * k.k() + u)])
            k.set_raw(v, u, mirror(mask, space.kind));
    }
    return k;
}

json family_to_json(const TypeFamily & family)
{
    json out;
    space_to_json(out, family.space);
    out["size_bound"] = family.size_bound;
    out["types"] = json::array();
    for (const auto & t : family.types)
        out["types"].push_back(type_to_json(t));
    return out;
}

TypeFamily family_from_json(const json & doc)
{
    if (! doc.is_object() || ! doc.contains("types") || ! doc["types"].is_array())
        fail(ErrorKind::ParseError, "a type family needs a \"types\" array");
    TypeFamily out{space_from_json(doc), doc.value("size_bound", 0), {}};
    for (const auto & t : doc["types"]) {
        TypeGraph type = type_from_json(t);
        if (type.space() != out.space)
            fail(ErrorKind::KindMismatch, "family members live in different type spaces");
        out.types.push_back(std::move(type));
    }
    return out;
}

std::string type_to_text(const TypeGraph & k)
{
    return type_to_json(k).dump() + "\n";
}

TypeGraph type_from_text(const std::string & text)
{
    json doc;
    try {
        doc = json::parse(text);
    }
    catch (const json::exception & e) {
        fail(ErrorKind::ParseError, e.what());
    }
    return type_from_json(doc);
}

TypeGraph load_type(const std::filesystem::path & path)
{
    return type_from_text(read_file(path));
}

void save_type(const std::filesystem::path & path, const TypeGraph & k)
{
    write_file(path, type_to_text(k));
}

} // namespace regracut
