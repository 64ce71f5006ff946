#include "flowtorus/io.hpp"

#include <fstream>
#include <sstream>

namespace flowtorus {

namespace {

constexpr std::int64_t safe_integer = (std::int64_t{1} << 53) - 1;

/// Accumulates every problem found while reading a document.
struct Problems {
    std::vector<std::string> list;
    void add(const std::string& where, const std::string& what) { list.push_back(where + ": " + what); }
};

std::optional<std::int64_t> read_int(const Json& j, const std::string& where, Problems& p)
{
    if (j.is_number_integer())
        return j.get<std::int64_t>();
    if (j.is_string()) {
        try {
            std::size_t used = 0;
            const auto s = j.get<std::string>();
            const auto v = std::stoll(s, &used);
            if (used == s.size())
                return v;
        } catch (const std::exception&) {
        }
    }
    p.add(where, "expected an integer");
    return std::nullopt;
}

std::optional<std::size_t> read_index(const Json& j, const std::string& where, Problems& p)
{
    auto v = read_int(j, where, p);
    if (v && *v < 0) {
        p.add(where, "expected a non-negative integer");
        return std::nullopt;
    }
    return v ? std::optional<std::size_t>(static_cast<std::size_t>(*v)) : std::nullopt;
}

template <class F>
auto read_array(const Json& j, const std::string& where, Problems& p, F&& item)
    -> std::optional<std::vector<typename decltype(item(j, where))::value_type>>
{
    using T = typename decltype(item(j, where))::value_type;
    if (!j.is_array()) {
        p.add(where, "expected an array");
        return std::nullopt;
    }
    std::vector<T> out;
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
        auto v = item(j[i], where + "[" + std::to_string(i) + "]");
        if (v)
            out.push_back(std::move(*v));
        else
            ok = false;
    }
    return ok ? std::optional<std::vector<T>>(std::move(out)) : std::nullopt;
}

std::optional<IntMatrix> read_matrix(const Json& j, const std::string& where, Problems& p)
{
    auto rows = read_array(j, where, p, [&](const Json& r, const std::string& w) {
        return read_array(r, w, p, [&](const Json& x, const std::string& w2) { return read_int(x, w2, p); });
    });
    if (!rows)
        return std::nullopt;
    const auto n = rows->size();
    const auto m = n ? rows->front().size() : 0;
    IntMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < n; ++i) {
        if ((*rows)[i].size() != m) {
            p.add(where, "rows have different lengths");
            return std::nullopt;
        }
        for (std::size_t k = 0; k < m; ++k)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = (*rows)[i][k];
    }
    return out;
}

std::optional<Permutation> read_permutation(const Json& j, const std::string& where, Problems& p)
{
    return read_array(j, where, p, [&](const Json& x, const std::string& w) { return read_index(x, w, p); });
}

const Json* field(const Json& obj, const char* name) { return obj.contains(name) ? &obj.at(name) : nullptr; }

std::optional<TransitionGraph> read_graph(const Json& j, Problems& p)
{
    if (!j.is_object()) {
        p.add("graph", "expected an object");
        return std::nullopt;
    }
    const auto before = p.list.size();
    std::optional<std::size_t> vertices, rank;
    if (auto* v = field(j, "vertices"))
        vertices = read_index(*v, "graph.vertices", p);
    else
        p.add("graph.vertices", "missing");
    if (auto* b = field(j, "rank"))
        rank = read_index(*b, "graph.rank", p);
    else
        p.add("graph.rank", "missing");

    std::vector<Edge> edges;
    const Json* es = field(j, "edges");
    if (!es || !es->is_array()) {
        p.add("graph.edges", "expected an array");
    } else {
        for (std::size_t i = 0; i < es->size(); ++i) {
            const auto w = "graph.edges[" + std::to_string(i) + "]";
            const Json& e = (*es)[i];
            if (!e.is_object()) {
                p.add(w, "expected an object");
                continue;
            }
            Edge x;
            bool ok = true;
            auto get_index = [&](const char* name, std::size_t& out) {
                if (auto* f = field(e, name)) {
                    if (auto v = read_index(*f, w + "." + name, p))
                        out = *v;
                    else
                        ok = false;
                } else {
                    p.add(w + "." + name, "missing");
                    ok = false;
                }
            };
            get_index("source", x.source);
            get_index("target", x.target);
            if (auto* s = field(e, "sign")) {
                auto v = read_int(*s, w + ".sign", p);
                if (v)
                    x.sign = static_cast<int>(*v);
                else
                    ok = false;
            }
            if (auto* wt = field(e, "weight")) {
                auto v = read_int(*wt, w + ".weight", p);
                if (v)
                    x.weight = *v;
                else
                    ok = false;
            }
            if (auto* h = field(e, "hvec")) {
                auto v = read_array(*h, w + ".hvec", p,
                                    [&](const Json& c, const std::string& w2) { return read_int(c, w2, p); });
                if (v)
                    x.hvec = IntVector(v->begin(), v->end());
                else
                    ok = false;
            } else {
                p.add(w + ".hvec", "missing");
                ok = false;
            }
            if (ok)
                edges.push_back(std::move(x));
        }
    }
    if (p.list.size() != before || !vertices || !rank)
        return std::nullopt;
    try {
        return TransitionGraph(*vertices, *rank, std::move(edges));
    } catch (const Error& e) {
        p.add("graph", e.what());
        return std::nullopt;
    }
}

} // namespace

Json rational_to_json(const Rational& r)
{
    if (is_integral(r)) {
        const Integer n = boost::multiprecision::numerator(r);
        if (n <= safe_integer && n >= -safe_integer)
            return Json(n.convert_to<std::int64_t>());
        return Json(n.str());
    }
    return Json(to_string(r));
}

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    fail(ErrorCode::ParseError, "expected an integer or a \"p/q\" string");
}

Json polynomial_to_json(const GroupRingElement& p)
{
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms())
        terms.push_back({{"hvec", m.vector()}, {"degree", m.degree()}, {"coef", rational_to_json(c)}});
    return {{"rank", p.rank()}, {"terms", terms}};
}

GroupRingElement polynomial_from_json(const Json& j)
{
    try {
        const auto rank = j.at("rank").get<std::size_t>();
        GroupRingElement p(rank);
        for (const auto& t : j.at("terms")) {
            auto v = t.at("hvec").get<std::vector<std::int64_t>>();
            if (v.size() != rank)
                fail(ErrorCode::ValidationError, "polynomial term has hvec length " + std::to_string(v.size()) +
                                                     " but rank is " + std::to_string(rank));
            p.add_term(Monomial(std::move(v), t.at("degree").get<std::int64_t>()), rational_from_json(t.at("coef")));
        }
        return p;
    } catch (const Json::exception& e) {
        fail(ErrorCode::ParseError, std::string("polynomial: ") + e.what());
    } catch (const std::invalid_argument& e) {
        fail(ErrorCode::ParseError, std::string("polynomial: ") + e.what());
    }
}

Json graph_to_json(const TransitionGraph& g)
{
    Json edges = Json::array();
    for (const auto& e : g.edges())
        edges.push_back(
            {{"source", e.source}, {"target", e.target}, {"sign", e.sign}, {"hvec", e.hvec}, {"weight", e.weight}});
    return {{"vertices", g.vertex_count()}, {"rank", g.rank()}, {"edges", edges}};
}

TransitionGraph graph_from_json(const Json& j)
{
    Problems p;
    auto g = read_graph(j, p);
    if (!g) {
        std::string msg;
        for (const auto& s : p.list)
            msg += (msg.empty() ? "" : "; ") + s;
        fail(ErrorCode::ValidationError, msg);
    }
    return std::move(*g);
}

Json int_matrix_to_json(const IntMatrix& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            r.push_back(m(i, k));
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

Json vector_to_json(const RationalVector& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(rational_to_json(v(i)));
    return out;
}

RationalVector vector_from_json(const Json& j)
{
    RationalVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = rational_from_json(j[i]);
    return v;
}

} // namespace

Json hull_to_json(const DirectionHull& h)
{
    Json points = Json::array(), cycles = Json::array(), span = Json::array(), facets = Json::array(),
         faces = Json::array();
    for (const auto& x : h.points())
        points.push_back(vector_to_json(x));
    for (const auto& z : h.cycles())
        cycles.push_back(z.edges);
    for (const auto& [a, c] : h.span_equations())
        span.push_back({{"normal", vector_to_json(a)}, {"offset", rational_to_json(c)}});
    for (const auto& f : h.facets())
        facets.push_back({{"normal", vector_to_json(f.normal)}, {"offset", rational_to_json(f.offset)}, {"points", f.points}});
    for (FaceId i = 0; i < h.faces().size(); ++i)
        faces.push_back({{"id", i}, {"dimension", h.face(i).dimension}, {"points", h.face(i).points}});
    return {{"ambient_dim", h.ambient_dim()}, {"dimension", h.dimension()}, {"points", points}, {"cycles", cycles},
            {"span", span}, {"facets", facets}, {"faces", faces}};
}

DirectionHull hull_from_json(const Json& j)
{
    try {
        std::vector<RationalVector> points;
        for (const auto& x : j.at("points"))
            points.push_back(vector_from_json(x));
        std::vector<Cycle> cycles;
        for (const auto& z : j.at("cycles"))
            cycles.push_back(Cycle{z.get<std::vector<EdgeId>>()});
        std::vector<std::pair<RationalVector, Rational>> span;
        for (const auto& s : j.at("span"))
            span.emplace_back(vector_from_json(s.at("normal")), rational_from_json(s.at("offset")));
        std::vector<Facet> facets;
        for (const auto& f : j.at("facets"))
            facets.push_back(Facet{vector_from_json(f.at("normal")), rational_from_json(f.at("offset")),
                                   f.at("points").get<std::vector<std::size_t>>()});
        return assemble_hull(j.at("ambient_dim").get<std::size_t>(), std::move(points), std::move(cycles),
                             std::move(span), std::move(facets));
    } catch (const Json::exception& e) {
        fail(ErrorCode::ParseError, std::string("hull: ") + e.what());
    }
}

InputDocument parse_input_text(const std::string& text)
{
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object())
        fail(ErrorCode::ParseError, "top level must be an object");

    Problems p;
    InputDocument out;
    if (auto* g = field(doc, "graph"))
        out.graph = read_graph(*g, p);

    if (auto* ex = field(doc, "exceptional")) {
        if (!ex->is_array()) {
            p.add("exceptional", "expected an array");
        } else {
            for (std::size_t i = 0; i < ex->size(); ++i) {
                const auto w = "exceptional[" + std::to_string(i) + "]";
                const Json& r = (*ex)[i];
                if (!r.is_object() || !r.contains("cycle")) {
                    p.add(w, "expected an object with a cycle");
                    continue;
                }
                ExceptionalCycleRecord rec;
                bool ok = true;
                if (auto c = read_array(r.at("cycle"), w + ".cycle", p,
                                        [&](const Json& x, const std::string& w2) { return read_index(x, w2, p); }))
                    rec.cycle.edges = std::move(*c);
                else
                    ok = false;
                if (auto* t = field(r, "type")) {
                    try {
                        rec.type = parse_type_content(t->get<std::string>());
                    } catch (const std::exception&) {
                        p.add(w + ".type", "expected SH_or_SV, SH, SV, mixed or corner");
                        ok = false;
                    }
                }
                for (auto [name, slot] : {std::pair{"pn", &rec.pn}, std::pair{"po", &rec.po}})
                    if (auto* f = field(r, name)) {
                        if (auto v = read_int(*f, w + "." + name, p))
                            *slot = static_cast<int>(*v);
                        else
                            ok = false;
                    }
                if (ok)
                    out.exceptional.push_back(std::move(rec));
            }
            if (out.graph && p.list.empty()) {
                try {
                    validate_records(*out.graph, out.exceptional);
                } catch (const Error& e) {
                    p.add("exceptional", e.what());
                }
            } else if (!out.graph && !out.exceptional.empty()) {
                p.add("exceptional", "records need a graph");
            }
        }
    }

    if (auto* c = field(doc, "cover")) {
        CoverSpec spec;
        bool ok = c->is_object();
        if (!ok)
            p.add("cover", "expected an object");
        if (ok && c->contains("generators")) {
            if (auto g = read_array(c->at("generators"), "cover.generators", p,
                                    [&](const Json& x, const std::string& w) { return read_permutation(x, w, p); }))
                spec.generators = std::move(*g);
            else
                ok = false;
        }
        if (ok) {
            if (auto v = c->contains("voltage")
                             ? read_array(c->at("voltage"), "cover.voltage", p,
                                          [&](const Json& x, const std::string& w) { return read_permutation(x, w, p); })
                             : (p.add("cover.voltage", "missing"), std::nullopt))
                spec.voltage = std::move(*v);
            else
                ok = false;
        }
        if (ok && c->contains("labels")) {
            const auto l = c->at("labels");
            if (l == "abstract")
                spec.labels = CoverLabels::Abstract;
            else if (l == "pullback")
                spec.labels = CoverLabels::Pullback;
            else {
                p.add("cover.labels", "expected \"abstract\" or \"pullback\"");
                ok = false;
            }
        }
        if (ok && out.graph && spec.voltage.size() != out.graph->edge_count())
            p.add("cover.voltage", "has " + std::to_string(spec.voltage.size()) + " entries for " +
                                       std::to_string(out.graph->edge_count()) + " edges");
        if (ok)
            out.cover = std::move(spec);
    }

    if (auto* d = field(doc, "deck_action")) {
        if (!d->is_array()) {
            p.add("deck_action", "expected an array of generators");
        } else {
            for (std::size_t i = 0; i < d->size(); ++i) {
                const auto w = "deck_action[" + std::to_string(i) + "]";
                const Json& x = (*d)[i];
                if (!x.is_object() || !x.contains("vertices") || !x.contains("edges") || !x.contains("matrix")) {
                    p.add(w, "expected an object with vertices, edges and matrix");
                    continue;
                }
                auto v = read_permutation(x.at("vertices"), w + ".vertices", p);
                auto e = read_permutation(x.at("edges"), w + ".edges", p);
                auto m = read_matrix(x.at("matrix"), w + ".matrix", p);
                if (v && e && m)
                    out.deck_generators.push_back(DeckElement{std::move(*v), std::move(*e), std::move(*m)});
            }
        }
    }

    if (auto* c = field(doc, "chi_S"))
        out.chi_S = read_int(*c, "chi_S", p);
    if (auto* b = field(doc, "b1"))
        out.b1 = read_int(*b, "b1", p);
    if (auto* f = field(doc, "fiber_components")) {
        out.fiber_components =
            read_array(*f, "fiber_components", p, [&](const Json& x, const std::string& w) { return read_index(x, w, p); });
        if (out.fiber_components && out.graph && out.fiber_components->size() != out.graph->vertex_count())
            p.add("fiber_components", "needs one tag per vertex");
    }
    if (auto* a = field(doc, "homological_action"))
        out.homological_action = read_matrix(*a, "homological_action", p);
    if (auto* q = field(doc, "polynomial")) {
        try {
            out.polynomial = polynomial_from_json(*q);
        } catch (const Error& e) {
            p.add("polynomial", e.what());
        }
    }

    for (const auto& [key, value] : doc.items()) {
        static const std::vector<std::string> known = {"graph", "exceptional", "cover", "deck_action", "chi_S",
                                                       "b1", "fiber_components", "homological_action", "polynomial"};
        if (std::find(known.begin(), known.end(), key) == known.end())
            p.add(key, "unknown field");
    }

    if (!p.list.empty()) {
        std::string msg;
        for (const auto& s : p.list)
            msg += "\n  " + s;
        fail(ErrorCode::ValidationError, std::to_string(p.list.size()) + " problem(s):" + msg);
    }
    return out;
}

InputDocument parse_input(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::ParseError, "cannot open " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_input_text(text.str());
}

} // namespace flowtorus
