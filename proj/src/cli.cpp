#include "flowtorus/cli.hpp"

#include <charconv>
#include <iomanip>
#include <sstream>

#include "flowtorus/mahler.hpp"
#include "flowtorus/zeta.hpp"

namespace flowtorus {

namespace {

std::size_t parse_count(std::string_view s)
{
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v == 0)
        fail(ErrorCode::ValidationError, "cap must be a positive integer, got '" + std::string(s) + "'");
    return v;
}

std::string format_double(double x)
{
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

std::string point_text(const RationalVector& v)
{
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + to_string(v(i));
    return s + ")";
}

template <class T>
std::string list_text(const std::vector<T>& xs)
{
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if constexpr (std::is_same_v<T, Integer>)
            s += (i ? ", " : "") + xs[i].str();
        else
            s += (i ? ", " : "") + std::to_string(xs[i]);
    }
    return s + "]";
}

std::string matrix_text(const IntMatrix& m)
{
    std::string s = "[";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        s += i ? ", [" : "[";
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            s += (k ? ", " : "") + std::to_string(m(i, k));
        s += "]";
    }
    return s + "]";
}

const TransitionGraph& need_graph(const InputDocument& doc)
{
    if (!doc.graph)
        fail(ErrorCode::ValidationError, "this command needs a graph");
    return *doc.graph;
}

Subgraph chosen_subgraph(const TransitionGraph& g, const CommandFlags& flags)
{
    return flags.subgraph ? Subgraph(g, *flags.subgraph) : Subgraph::whole(g);
}

/// Graph and deck action the orbit-level commands operate on.
struct Acted {
    std::optional<DerivedCover> cover;
    const TransitionGraph* graph = nullptr;
    DeckAction action;
};

Acted acted_graph(const InputDocument& doc, const CommandFlags& flags)
{
    const auto& g = need_graph(doc);
    Acted a;
    if (doc.cover) {
        if (!doc.exceptional.empty())
            fail(ErrorCode::ValidationError, "exceptional records refer to base edges; enter the lifted graph instead");
        a.cover = derived_cover(g, *doc.cover, flags.caps.group);
        a.graph = &a.cover->graph;
        a.action = a.cover->action;
    } else {
        a.graph = &g;
        a.action = generate_action(g, doc.deck_generators, flags.caps.group);
    }
    return a;
}

GroupRingElement target_polynomial(const InputDocument& doc, const CommandFlags& flags)
{
    if (doc.polynomial)
        return *doc.polynomial;
    return kappa(Subgraph::whole(need_graph(doc)), flags.caps.determinant);
}

std::int64_t default_b1(const InputDocument& doc) { return doc.b1.value_or(static_cast<std::int64_t>(need_graph(doc).rank()) + 1); }

Json face_json(const DirectionHull& h, FaceId f)
{
    const auto& face = h.face(f);
    Json j = {{"id", f}, {"dimension", face.dimension}, {"points", face.points}};
    if (face.dimension == 0)
        j["position"] = hull_to_json(h)["points"][face.points.front()];
    return j;
}

// ---- commands ----

CommandOutput cmd_validate(const InputDocument& doc, const CommandFlags&)
{
    CommandOutput out;
    std::ostringstream t;
    Json j = {{"valid", true}};
    if (doc.graph) {
        const auto& g = *doc.graph;
        j["vertices"] = g.vertex_count();
        j["edges"] = g.edge_count();
        j["rank"] = g.rank();
        t << "valid: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges, rank " << g.rank() << "\n";
    } else {
        t << "valid: no graph\n";
    }
    j["exceptional_records"] = doc.exceptional.size();
    t << "exceptional records: " << doc.exceptional.size() << "\n";
    for (const auto& [name, present] : {std::pair{"cover", doc.cover.has_value()},
                                        std::pair{"deck_action", !doc.deck_generators.empty()},
                                        std::pair{"homological_action", doc.homological_action.has_value()},
                                        std::pair{"polynomial", doc.polynomial.has_value()}}) {
        j[name] = present;
        if (present)
            t << name << ": present\n";
    }
    out.text = t.str();
    out.structured = j;
    return out;
}

CommandOutput cmd_hull(const InputDocument& doc, const CommandFlags& flags)
{
    const auto& g = need_graph(doc);
    const auto h = direction_hull(chosen_subgraph(g, flags), flags.caps.cycles, flags.caps.dimension);
    CommandOutput out;
    out.structured = hull_to_json(h);
    std::ostringstream t;
    t << "dimension " << h.dimension() << " in R^" << h.ambient_dim() << "\n";
    t << "generating cycles: " << h.cycles().size() << "\n";
    const auto verts = h.vertex_faces();
    t << "vertices: " << verts.size() << "\n";
    for (FaceId v : verts) {
        const auto i = h.face(v).points.front();
        t << "  " << point_text(h.points()[i]) << "  cycle " << list_text(h.cycles()[i].edges) << "\n";
    }
    std::vector<std::size_t> by_dim(h.dimension() + 1, 0);
    for (const auto& f : h.faces())
        ++by_dim[f.dimension];
    t << "faces by dimension:";
    for (std::size_t d = 0; d < by_dim.size(); ++d)
        t << " " << d << ":" << by_dim[d];
    t << "\nfacets: " << h.facets().size() << "\n";
    out.text = t.str();
    return out;
}

CommandOutput cmd_faces(const InputDocument& doc, const CommandFlags& flags)
{
    const auto& g = need_graph(doc);
    const auto h = direction_hull(chosen_subgraph(g, flags), flags.caps.cycles, flags.caps.dimension);
    CommandOutput out;
    Json faces = Json::array();
    std::ostringstream t;
    for (FaceId f = 0; f < h.faces().size(); ++f) {
        Json j = face_json(h, f);
        const auto cls = classify_face(g, h, f, doc.exceptional);
        j["class"] = face_class_name(cls);
        j["support_edges"] = support_subgraph(g, h, f).edges();
        t << "face " << f << ": dim " << h.face(f).dimension << ", points " << list_text(h.face(f).points) << ", "
          << face_class_name(cls);
        if (h.face(f).dimension == 0)
            t << ", at " << point_text(h.points()[h.face(f).points.front()]);
        t << "\n";
        faces.push_back(std::move(j));
    }
    out.structured = {{"faces", faces}, {"top_face", h.top_face()}};
    out.text = t.str();
    return out;
}

CommandOutput cmd_kappa(const InputDocument& doc, const CommandFlags& flags)
{
    const auto& g = need_graph(doc);
    const auto k = kappa(chosen_subgraph(g, flags), flags.caps.determinant);
    return {"kappa = " + to_string(k) + "\n", {{"kappa", polynomial_to_json(k)}}};
}

CommandOutput cmd_zeta(const InputDocument& doc, const CommandFlags& flags)
{
    const auto& g = need_graph(doc);
    if (flags.truncate < 1)
        fail(ErrorCode::ValidationError, "--truncate must be positive");
    const auto z = zeta_from_kappa(g, doc.exceptional, flags.truncate, false, flags.caps.determinant);
    CommandOutput out;
    std::ostringstream t;
    t << "zeta = " << to_string(z.series.element()) << " + O(t^" << flags.truncate + 1 << ")\n";
    if (z.exact)
        t << "exact: " << to_string(*z.exact) << "\n";
    for (const auto& w : z.warnings)
        t << "warning: " << w << "\n";
    out.text = t.str();
    out.structured = {{"series", polynomial_to_json(z.series.element())},
                      {"truncate", flags.truncate},
                      {"exact", z.exact ? polynomial_to_json(*z.exact) : Json()},
                      {"warnings", z.warnings}};
    return out;
}

CommandOutput cmd_alexander(const InputDocument& doc, const CommandFlags& flags)
{
    const auto& g = need_graph(doc);
    const auto b1 = default_b1(doc);
    const auto d = alexander_polynomial(g, doc.exceptional, b1);
    CommandOutput out;
    out.text = "Delta = " + to_string(d) + "\n";
    out.structured = {{"delta", polynomial_to_json(d)}, {"b1", b1}};
    const auto chi = flags.chi ? flags.chi : doc.chi_S;
    if (chi) {
        const bool ok = check_degree_formula(d, *chi, b1);
        out.structured["degree_formula"] = ok;
        out.text += std::string("degree formula: ") + (ok ? "holds" : "fails") + "\n";
    }
    return out;
}

CommandOutput cmd_homology_action(const InputDocument& doc, const CommandFlags& flags)
{
    if (!doc.homological_action)
        fail(ErrorCode::ValidationError, "this command needs homological_action");
    const HomologicalAction a{*doc.homological_action};
    const auto warnings = check_action(a);
    const auto h = homology_of_mapping_torus(a);
    const auto alex = alexander_single_variable(a);
    CommandOutput out;
    std::ostringstream t;
    t << "b1 = " << h.b1 << "\n";
    t << "torsion = " << list_text(h.torsion) << "\n";
    t << "invariant factors of I - A = " << list_text(h.invariant_factors) << "\n";
    t << "det(1 - tA) = " << to_string(alex.polynomial) << "\n";
    t << "monic: " << (alex.monic ? "yes" : "no") << ", palindromic: " << (alex.palindromic ? "yes" : "no") << "\n";
    Json tors = Json::array(), inv = Json::array();
    for (const auto& x : h.torsion)
        tors.push_back(rational_to_json(Rational(x)));
    for (const auto& x : h.invariant_factors)
        inv.push_back(rational_to_json(Rational(x)));
    out.structured = {{"b1", h.b1},
                      {"torsion", tors},
                      {"invariant_factors", inv},
                      {"polynomial", polynomial_to_json(alex.polynomial)},
                      {"monic", alex.monic},
                      {"palindromic", alex.palindromic},
                      {"warnings", warnings}};
    const auto chi = flags.chi ? flags.chi : doc.chi_S;
    if (chi) {
        const bool ok = check_degree_formula(alex.polynomial, *chi, h.b1);
        out.structured["degree_formula"] = ok;
        t << "degree formula: " << (ok ? "holds" : "fails") << "\n";
    }
    for (const auto& w : warnings)
        t << "warning: " << w << "\n";
    out.text = t.str();
    return out;
}

CommandOutput cmd_mahler(const InputDocument& doc, const CommandFlags& flags)
{
    GroupRingElement q = doc.polynomial ? *doc.polynomial : alexander_polynomial(need_graph(doc), doc.exceptional, default_b1(doc));
    const auto m = mahler_multivariate(q, q.rank(), flags.samples, flags.seed);
    CommandOutput out;
    std::ostringstream t;
    t << "polynomial = " << to_string(q) << "\n";
    t << "Mahler measure = " << format_double(m.value) << " +- " << format_double(m.standard_error) << " ("
      << m.samples << " samples, seed " << flags.seed << ")\n";
    if (m.discarded)
        t << "discarded specializations: " << m.discarded << "\n";
    out.text = t.str();
    out.structured = {{"polynomial", polynomial_to_json(q)},
                      {"value", m.value},
                      {"standard_error", m.standard_error},
                      {"samples", m.samples},
                      {"seed", flags.seed},
                      {"discarded", m.discarded},
                      {"method", m.method == MahlerMethod::JensenExact ? "jensen_exact" : "iterated_jensen"}};
    return out;
}

CommandOutput cmd_cover(const InputDocument& doc, const CommandFlags& flags)
{
    const auto& g = need_graph(doc);
    if (!doc.cover)
        fail(ErrorCode::ValidationError, "this command needs a cover");
    const auto c = derived_cover(g, *doc.cover, flags.caps.group);
    CommandOutput out;
    std::ostringstream t;
    t << "group order " << c.group.order() << "\n";
    t << "derived graph: " << c.graph.vertex_count() << " vertices, " << c.graph.edge_count() << " edges, rank "
      << c.graph.rank() << ", " << c.component_count << " component(s)\n";
    t << "homology projection = " << matrix_text(c.homology_projection) << "\n";
    const bool commutes = deck_commutes_with_projection(c);
    t << "deck action commutes with projection: " << (commutes ? "yes" : "no") << "\n";
    out.structured = {{"group_order", c.group.order()},
                      {"graph", graph_to_json(c.graph)},
                      {"homology_projection", int_matrix_to_json(c.homology_projection)},
                      {"components", c.component_count},
                      {"deck_commutes", commutes},
                      {"warnings", c.warnings}};
    const auto hb = direction_hull(Subgraph::whole(g), flags.caps.cycles, flags.caps.dimension);
    const auto hc = direction_hull(Subgraph::whole(c.graph), flags.caps.cycles, flags.caps.dimension);
    const auto lp = lifted_hull_projection(hb, hc, c.homology_projection, false);
    Json table = Json::array();
    for (const auto& row : lp.table) {
        table.push_back({{"base_face", row.base_face},
                         {"cover_face", row.cover_face ? Json(*row.cover_face) : Json()},
                         {"base_codimension", row.base_codimension},
                         {"cover_codimension", row.cover_codimension ? Json(*row.cover_codimension) : Json()}});
        t << "base face " << row.base_face << " (codim " << row.base_codimension << ") <- ";
        if (row.cover_face)
            t << "cover face " << *row.cover_face << " (codim " << *row.cover_codimension << ")\n";
        else
            t << "no face\n";
    }
    out.structured["preimages"] = table;
    out.structured["codimension_preserved"] = lp.consistent;
    t << "codimension preserved: " << (lp.consistent ? "yes" : "no") << "\n";
    for (const auto& w : c.warnings)
        t << "warning: " << w << "\n";
    for (const auto& w : lp.map.warnings)
        t << "warning: " << w << "\n";
    out.text = t.str();
    return out;
}

CommandOutput cmd_orbits(const InputDocument& doc, const CommandFlags& flags)
{
    const auto a = acted_graph(doc, flags);
    const auto h = direction_hull(Subgraph::whole(*a.graph), flags.caps.cycles, flags.caps.dimension);
    const auto orbits = gamma_orbits_of_faces(h, a.action);
    CommandOutput out;
    std::ostringstream t;
    Json js = Json::array();
    t << "group order " << a.action.elements.size() << ", " << orbits.size() << " orbit(s)\n";
    for (const auto& o : orbits) {
        js.push_back({{"faces", o.faces}, {"disjoint", o.disjoint}, {"dimension", h.face(o.faces.front()).dimension}});
        t << "  " << list_text(o.faces) << " dim " << h.face(o.faces.front()).dimension
          << (o.disjoint ? ", disjoint" : ", overlapping") << "\n";
    }
    out.structured = {{"group_order", a.action.elements.size()}, {"orbits", js}};
    out.text = t.str();
    return out;
}

Json dominance_json(const DominanceReport& r)
{
    return {{"face", r.face},
            {"class", face_class_name(r.classification)},
            {"support_edges", r.support.edges()},
            {"zeta_face_part", polynomial_to_json(r.zeta_face_part)},
            {"dominant", r.dominant}};
}

CommandOutput cmd_dominance(const InputDocument& doc, const CommandFlags& flags)
{
    const auto& g = need_graph(doc);
    const auto h = direction_hull(Subgraph::whole(g), flags.caps.cycles, flags.caps.dimension);
    std::vector<FaceId> which;
    if (flags.face) {
        (void)h.face(*flags.face);
        which.push_back(*flags.face);
    } else {
        for (FaceId f = 0; f < h.faces().size(); ++f)
            which.push_back(f);
    }
    CommandOutput out;
    std::ostringstream t;
    Json js = Json::array();
    for (FaceId f : which) {
        const auto r = dominance_report(g, h, f, doc.exceptional);
        js.push_back(dominance_json(r));
        t << "face " << f << " (" << face_class_name(r.classification) << "): zeta[E] = " << to_string(r.zeta_face_part)
          << (r.dominant ? ", dominant" : ", not dominant") << "\n";
    }
    out.structured = {{"reports", js}};
    out.text = t.str();
    return out;
}

CommandOutput cmd_criterion(const InputDocument& doc, const CommandFlags& flags)
{
    const auto chi = flags.chi ? flags.chi : doc.chi_S;
    if (!chi)
        fail(ErrorCode::ValidationError, "criterion needs chi_S or --chi");
    const auto a = acted_graph(doc, flags);
    const auto h = direction_hull(Subgraph::whole(*a.graph), flags.caps.cycles, flags.caps.dimension);
    CriterionOptions opt;
    opt.samples = flags.samples;
    opt.seed = flags.seed;
    if (!doc.cover)
        opt.b1 = doc.b1;
    const auto r = criterion_check(*a.graph, h, a.action,
                                   a.cover ? std::span<const ExceptionalCycleRecord>{} : std::span(doc.exceptional),
                                   *chi, opt);
    CommandOutput out;
    std::ostringstream t;
    t << (r.pass ? "PASS" : "FAIL") << ": s = " << r.count << ", threshold = " << r.threshold << "\n";
    Json sel = Json::array();
    for (auto k : r.selected) {
        sel.push_back(r.orbits[k].faces);
        t << "  orbit " << list_text(r.orbits[k].faces) << "\n";
    }
    out.structured = {{"pass", r.pass}, {"s", r.count}, {"threshold", r.threshold}, {"selected", sel}};
    if (r.mahler) {
        t << "Mahler estimate of Delta = " << format_double(r.mahler->value) << " +- "
          << format_double(r.mahler->standard_error) << (r.mahler_exceeds_one ? " (> 1 by 3 sigma)" : " (not > 1 by 3 sigma)")
          << "\n";
        out.structured["mahler"] = {{"value", r.mahler->value},
                                    {"standard_error", r.mahler->standard_error},
                                    {"samples", r.mahler->samples},
                                    {"exceeds_one", r.mahler_exceeds_one}};
        out.structured["delta"] = polynomial_to_json(*r.delta);
    }
    out.text = t.str();
    return out;
}

CommandOutput cmd_lm(const InputDocument& doc, const CommandFlags& flags)
{
    if (flags.upto < 1)
        fail(ErrorCode::ValidationError, "--upto must be positive");
    const auto q = target_polynomial(doc, flags);
    const auto seq = lm_sequence(q, flags.upto);
    CommandOutput out;
    std::ostringstream t;
    Json js = Json::array();
    for (std::int64_t m = 1; m <= flags.upto; ++m) {
        js.push_back(polynomial_to_json(seq[m]));
        t << "L_" << m << " = " << to_string(seq[m]) << "\n";
    }
    const auto bound = check_lemma_l1_bound(q, flags.upto);
    t << "l1 bound |L_m| <= " << bound.degree << ": "
      << (bound.holds_up_to_M ? "holds" : "violated at m = " + std::to_string(*bound.first_violation)) << "\n";
    out.structured = {{"L", js},
                      {"l1_bound_holds", bound.holds_up_to_M},
                      {"first_violation", bound.first_violation ? Json(*bound.first_violation) : Json()}};
    out.text = t.str();
    return out;
}

CommandOutput cmd_find_mq(const InputDocument& doc, const CommandFlags& flags)
{
    const auto q = target_polynomial(doc, flags);
    std::vector<std::int64_t> eval = flags.eval;
    if (eval.empty())
        eval.assign(q.rank(), 1);
    const auto mq = find_mq(q, flags.prime, eval);
    CommandOutput out;
    out.text = "m_q = " + (mq ? std::to_string(*mq) : std::string("none found")) + " (p = " + std::to_string(flags.prime) + ")\n";
    out.structured = {{"m_q", mq ? Json(*mq) : Json()}, {"prime", flags.prime}, {"eval", eval}};
    return out;
}

} // namespace

Caps parse_caps(std::string_view text, Caps base)
{
    if (text.find('=') == std::string_view::npos) {
        base.cycles = parse_count(text);
        return base;
    }
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorCode::ValidationError, "cap entry '" + std::string(item) + "' is not name=K");
        const auto name = item.substr(0, eq);
        const auto value = parse_count(item.substr(eq + 1));
        if (name == "cycles")
            base.cycles = value;
        else if (name == "determinant")
            base.determinant = value;
        else if (name == "dimension")
            base.dimension = value;
        else if (name == "group")
            base.group = value;
        else
            fail(ErrorCode::ValidationError, "unknown cap '" + std::string(name) + "'");
    }
    return base;
}

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = {"validate", "hull",      "faces",  "kappa",     "zeta",
                                                   "alexander", "homology-action", "mahler", "cover", "orbits",
                                                   "dominance", "criterion", "lm",     "find-mq"};
    return names;
}

CommandOutput run_command(std::string_view command, const InputDocument& doc, const CommandFlags& flags)
{
    CommandOutput out;
    if (command == "validate")
        out = cmd_validate(doc, flags);
    else if (command == "hull")
        out = cmd_hull(doc, flags);
    else if (command == "faces")
        out = cmd_faces(doc, flags);
    else if (command == "kappa")
        out = cmd_kappa(doc, flags);
    else if (command == "zeta")
        out = cmd_zeta(doc, flags);
    else if (command == "alexander")
        out = cmd_alexander(doc, flags);
    else if (command == "homology-action")
        out = cmd_homology_action(doc, flags);
    else if (command == "mahler")
        out = cmd_mahler(doc, flags);
    else if (command == "cover")
        out = cmd_cover(doc, flags);
    else if (command == "orbits")
        out = cmd_orbits(doc, flags);
    else if (command == "dominance")
        out = cmd_dominance(doc, flags);
    else if (command == "criterion")
        out = cmd_criterion(doc, flags);
    else if (command == "lm")
        out = cmd_lm(doc, flags);
    else if (command == "find-mq")
        out = cmd_find_mq(doc, flags);
    else
        fail(ErrorCode::ValidationError, "unknown command '" + std::string(command) + "'");
    if (flags.format == OutputFormat::Json)
        out.text = out.structured.dump(2) + "\n";
    return out;
}

} // namespace flowtorus
