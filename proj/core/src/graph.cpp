#include "vmodel/graph.hpp"

#include "vmodel/errors.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

namespace vmodel {

void Graph::add_edge(std::size_t u, std::size_t v) {
    if (u >= vertex_count || v >= vertex_count) throw PreconditionError("edge endpoint is not a vertex");
    edges.emplace_back(std::min(u, v), std::max(u, v));
}

std::vector<std::size_t> Graph::degrees() const {
    std::vector<std::size_t> deg(vertex_count, 0);
    for (auto [u, v] : edges) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

std::size_t Graph::max_degree() const {
    auto deg = degrees();
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

void Fragment::validate() const {
    for (auto [u, v] : core.edges)
        if (u >= core.vertex_count || v >= core.vertex_count)
            throw PreconditionError("edge endpoint is not a vertex");
    for (std::size_t l = 0; l < ends.size(); ++l) {
        const auto& t = ends[l];
        if (t.is_vertex()) {
            if (t.index >= core.vertex_count)
                throw PreconditionError("open end " + std::to_string(l + 1) + " attached to a missing vertex");
        } else {
            if (t.index >= ends.size() || t.index == l)
                throw PreconditionError("open end " + std::to_string(l + 1) + " has an invalid partner");
            const auto& back = ends[t.index];
            if (back.is_vertex() || back.index != l)
                throw PreconditionError("open ends " + std::to_string(l + 1) + " and " +
                                        std::to_string(t.index + 1) + " disagree on their shared edge");
        }
    }
}

std::vector<std::size_t> Fragment::degrees() const {
    auto deg = core.degrees();
    for (const auto& t : ends)
        if (t.is_vertex()) ++deg[t.index];
    return deg;
}

std::size_t Fragment::edge_count() const {
    std::size_t count = core.edges.size();
    for (std::size_t l = 0; l < ends.size(); ++l)
        if (ends[l].is_vertex() || ends[l].index > l) ++count;
    return count;
}

Fragment Fragment::from_graph(Graph g) { return Fragment{std::move(g), {}}; }

Fragment basic_fragment(std::size_t k) {
    Fragment f;
    f.core.vertex_count = 1;
    f.ends.assign(k, OpenTarget::to_vertex(0));
    return f;
}

Fragment open_edge() {
    Fragment f;
    f.ends = {OpenTarget::to_end(1), OpenTarget::to_end(0)};
    return f;
}

Fragment with_circle(Fragment f, std::size_t count) {
    f.core.circles += count;
    return f;
}

namespace {

// Resolution of "wires": ports (former open ends) joined by links to each
// other or to vertices. Internal ports have two links and disappear; chains
// of them collapse into single edges, or into circles when they close up.
// External ports keep one link and become the open ends of the result.
class Wiring {
public:
    struct End {
        bool is_port;
        std::size_t id;
    };

    explicit Wiring(std::size_t ports) : port_links_(ports) {}

    void link(End a, End b) {
        std::size_t id = links_.size();
        links_.push_back({a, b});
        if (a.is_port) port_links_[a.id].push_back(id);
        if (b.is_port) port_links_[b.id].push_back(id);
    }

    // `external` lists the surviving ports in output label order.
    Fragment resolve(Graph base, const std::vector<std::size_t>& external) const {
        std::vector<long> new_label(port_links_.size(), -1);
        for (std::size_t l = 0; l < external.size(); ++l) new_label[external[l]] = static_cast<long>(l);
        for (std::size_t p = 0; p < port_links_.size(); ++p) {
            std::size_t want = new_label[p] >= 0 ? 1 : 2;
            if (port_links_[p].size() != want) throw InvariantError("open end with wrong number of links");
        }

        Fragment out;
        out.core = std::move(base);
        out.ends.resize(external.size());
        std::vector<bool> seen(port_links_.size(), false);

        for (std::size_t l = 0; l < external.size(); ++l) {
            std::size_t p = external[l];
            if (seen[p]) continue;
            seen[p] = true;
            auto stop = walk(p, port_links_[p][0], seen);
            if (!stop.is_port) {
                out.ends[l] = OpenTarget::to_vertex(stop.id);
            } else {
                auto other = static_cast<std::size_t>(new_label[stop.id]);
                out.ends[l] = OpenTarget::to_end(other);
                out.ends[other] = OpenTarget::to_end(l);
            }
        }
        for (std::size_t p = 0; p < port_links_.size(); ++p) {
            if (seen[p]) continue;
            seen[p] = true;
            auto first = walk(p, port_links_[p][0], seen);
            if (first.is_port) {  // returned to p: a closed loop of ports
                ++out.core.circles;
                continue;
            }
            auto second = walk(p, port_links_[p][1], seen);
            out.core.add_edge(first.id, second.id);
        }
        return out;
    }

private:
    // Follows links starting at `port` through `link`; stops at a vertex, an
    // external port, or `port` itself.
    End walk(std::size_t port, std::size_t link, std::vector<bool>& seen) const {
        std::size_t current = port;
        while (true) {
            const auto& [a, b] = links_[link];
            if (a.is_port && b.is_port && a.id == b.id) throw InvariantError("self link on an open end");
            End next = (a.is_port && a.id == current) ? b : a;
            if (!next.is_port) return next;
            if (next.id == port) return next;
            seen[next.id] = true;
            const auto& links = port_links_[next.id];
            if (links.size() == 1) return next;
            link = links[0] == link ? links[1] : links[0];
            current = next.id;
        }
    }

    std::vector<std::pair<End, End>> links_;
    std::vector<std::vector<std::size_t>> port_links_;
};

// Adds the attachment links of fragment `f` to `w`, with f's ports starting
// at `port_offset` and its vertices at `vertex_offset`.
void add_attachments(Wiring& w, const Fragment& f, std::size_t port_offset, std::size_t vertex_offset) {
    for (std::size_t l = 0; l < f.k(); ++l) {
        const auto& t = f.ends[l];
        if (t.is_vertex())
            w.link({true, port_offset + l}, {false, vertex_offset + t.index});
        else if (t.index > l)
            w.link({true, port_offset + l}, {true, port_offset + t.index});
    }
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g = a;
    g.vertex_count += b.vertex_count;
    for (auto [u, v] : b.edges) g.edges.emplace_back(u + a.vertex_count, v + a.vertex_count);
    g.circles += b.circles;
    return g;
}

}  // namespace

Graph glue(const Fragment& f, const Fragment& h) {
    if (f.k() != h.k()) throw PreconditionError("glue: fragments have different numbers of open ends");
    f.validate();
    h.validate();
    const std::size_t k = f.k();
    Wiring w(2 * k);
    add_attachments(w, f, 0, 0);
    add_attachments(w, h, k, f.core.vertex_count);
    for (std::size_t l = 0; l < k; ++l) w.link({true, l}, {true, k + l});
    return w.resolve(disjoint_union(f.core, h.core), {}).core;
}

Fragment product(const Fragment& f, const Fragment& h) {
    Fragment out;
    out.core = disjoint_union(f.core, h.core);
    out.ends = f.ends;
    for (const auto& t : h.ends)
        out.ends.push_back(t.is_vertex() ? OpenTarget::to_vertex(t.index + f.core.vertex_count)
                                         : OpenTarget::to_end(t.index + f.k()));
    return out;
}

Fragment contract_fragment(const Fragment& f, std::size_t i, std::size_t j) {
    if (!(1 <= i && i < j && j <= f.k()))
        throw PreconditionError("contract_fragment: need 1 <= i < j <= k, got i=" + std::to_string(i) +
                                " j=" + std::to_string(j) + " k=" + std::to_string(f.k()));
    f.validate();
    Wiring w(f.k());
    add_attachments(w, f, 0, 0);
    w.link({true, i - 1}, {true, j - 1});
    std::vector<std::size_t> external;
    for (std::size_t l = 0; l < f.k(); ++l)
        if (l != i - 1 && l != j - 1) external.push_back(l);
    return w.resolve(f.core, external);
}

namespace {

struct Encoded {
    std::size_t edges;
    std::vector<std::size_t> code;
    Fragment fragment;
};

void enumerate_into(std::size_t k, std::size_t vertices, std::optional<std::size_t> max_degree,
                    std::optional<std::size_t> max_edges, std::vector<Encoded>& out) {
    if (!max_degree && !max_edges && vertices > 0)
        throw PreconditionError("enumeration with vertices needs a degree or edge bound");
    const std::size_t unbounded = std::numeric_limits<std::size_t>::max() / 4;
    const std::size_t degree_cap = max_degree.value_or(unbounded);
    const std::size_t edge_cap = max_edges.value_or(unbounded);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < vertices; ++a)
        for (std::size_t b = a; b < vertices; ++b) pairs.emplace_back(a, b);

    std::vector<long> target(k, -1);  // vertex id, or vertices + partner label
    std::vector<std::size_t> degree(vertices, 0);
    std::vector<std::size_t> mult(pairs.size(), 0);

    std::function<void(std::size_t, std::size_t)> place_edges = [&](std::size_t p, std::size_t edges) {
        if (p == pairs.size()) {
            Encoded e;
            e.edges = edges;
            for (auto t : target) e.code.push_back(static_cast<std::size_t>(t));
            e.code.insert(e.code.end(), mult.begin(), mult.end());
            Fragment& f = e.fragment;
            f.core.vertex_count = vertices;
            for (std::size_t q = 0; q < pairs.size(); ++q)
                for (std::size_t m = 0; m < mult[q]; ++m) f.core.add_edge(pairs[q].first, pairs[q].second);
            for (auto t : target) {
                auto ut = static_cast<std::size_t>(t);
                f.ends.push_back(ut < vertices ? OpenTarget::to_vertex(ut) : OpenTarget::to_end(ut - vertices));
            }
            out.push_back(std::move(e));
            return;
        }
        auto [a, b] = pairs[p];
        for (std::size_t m = 0;; ++m) {
            mult[p] = m;
            bool fits = edges + m <= edge_cap &&
                        (a == b ? degree[a] + 2 * m <= degree_cap
                                : degree[a] + m <= degree_cap && degree[b] + m <= degree_cap);
            if (!fits) break;
            degree[a] += a == b ? 2 * m : m;
            if (a != b) degree[b] += m;
            place_edges(p + 1, edges + m);
            degree[a] -= a == b ? 2 * m : m;
            if (a != b) degree[b] -= m;
        }
        mult[p] = 0;
    };

    std::function<void(std::size_t, std::size_t)> place_ends = [&](std::size_t l, std::size_t edges) {
        if (l == k) {
            place_edges(0, edges);
            return;
        }
        if (target[l] >= 0) {
            place_ends(l + 1, edges);
            return;
        }
        if (edges + 1 > edge_cap) return;
        for (std::size_t v = 0; v < vertices; ++v) {
            if (degree[v] + 1 > degree_cap) continue;
            target[l] = static_cast<long>(v);
            ++degree[v];
            place_ends(l + 1, edges + 1);
            --degree[v];
        }
        for (std::size_t j = l + 1; j < k; ++j) {
            if (target[j] >= 0) continue;
            target[l] = static_cast<long>(vertices + j);
            target[j] = static_cast<long>(vertices + l);
            place_ends(l + 1, edges + 1);
            target[j] = -1;
        }
        target[l] = -1;
    };

    place_ends(0, 0);
}

std::vector<Encoded> sorted(std::vector<Encoded> items) {
    std::sort(items.begin(), items.end(), [](const Encoded& a, const Encoded& b) {
        return std::tie(a.edges, a.code) < std::tie(b.edges, b.code);
    });
    return items;
}

}  // namespace

std::vector<Fragment> enumerate_fragment_class(std::size_t k, std::size_t vertices,
                                               std::optional<std::size_t> max_degree) {
    std::vector<Encoded> items;
    enumerate_into(k, vertices, max_degree, std::nullopt, items);
    std::vector<Fragment> out;
    out.reserve(items.size());
    for (auto& e : sorted(std::move(items))) out.push_back(std::move(e.fragment));
    return out;
}

std::vector<Fragment> enumerate_fragments(std::size_t k, std::size_t max_vertices,
                                          std::optional<std::size_t> max_degree) {
    std::vector<Fragment> out;
    for (std::size_t v = 0; v <= max_vertices; ++v) {
        auto cls = enumerate_fragment_class(k, v, max_degree);
        std::move(cls.begin(), cls.end(), std::back_inserter(out));
    }
    return out;
}

std::vector<Graph> enumerate_graphs(std::size_t vertices, std::size_t max_edges) {
    std::vector<Encoded> items;
    enumerate_into(0, vertices, std::nullopt, max_edges, items);
    std::vector<Graph> out;
    for (auto& e : sorted(std::move(items))) out.push_back(std::move(e.fragment.core));
    return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string> split_words(std::string_view line) {
    std::vector<std::string> words;
    std::istringstream in{std::string(line)};
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

std::size_t parse_label(const std::string& s, std::size_t k, std::size_t line) {
    std::size_t value = 0;
    try {
        std::size_t used = 0;
        value = std::stoul(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw ParseError("bad open-end label '" + s + "'", line);
    }
    if (value < 1 || value > k) throw ParseError("open-end label " + s + " outside 1.." + std::to_string(k), line);
    return value - 1;
}

}  // namespace

Fragment parse_fragment(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    Fragment f;
    std::map<std::string, std::size_t> names;
    std::vector<bool> assigned;

    auto vertex_id = [&](const std::string& name, std::size_t line) {
        auto it = names.find(name);
        if (it == names.end()) throw ParseError("undeclared vertex '" + name + "'", line);
        return it->second;
    };

    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto words = split_words(raw);
        if (words.empty()) continue;
        const std::string& kw = words[0];
        if (!have_header) {
            if (kw == "graph" && words.size() == 1) {
                have_header = true;
            } else if (kw == "fragment" && words.size() == 2 && words[1].rfind("k=", 0) == 0) {
                std::size_t k = 0;
                try {
                    std::size_t used = 0;
                    k = std::stoul(words[1].substr(2), &used);
                    if (used != words[1].size() - 2) throw std::invalid_argument(words[1]);
                } catch (const std::exception&) {
                    throw ParseError("bad fragment header '" + words[1] + "'", line_no);
                }
                f.ends.resize(k);
                have_header = true;
            } else {
                throw ParseError("expected 'graph' or 'fragment k=<k>' header", line_no);
            }
            assigned.assign(f.ends.size(), false);
            continue;
        }
        if (kw == "vertex" && words.size() == 2) {
            if (names.count(words[1])) throw ParseError("duplicate vertex '" + words[1] + "'", line_no);
            names[words[1]] = f.core.vertex_count++;
        } else if (kw == "edge" && words.size() == 3) {
            f.core.add_edge(vertex_id(words[1], line_no), vertex_id(words[2], line_no));
        } else if (kw == "loop" && words.size() == 2) {
            auto v = vertex_id(words[1], line_no);
            f.core.add_edge(v, v);
        } else if (kw == "circle" && words.size() == 1) {
            ++f.core.circles;
        } else if (kw == "open" && words.size() == 3) {
            auto l = parse_label(words[1], f.k(), line_no);
            if (assigned[l]) throw ParseError("open end " + words[1] + " used twice", line_no);
            f.ends[l] = OpenTarget::to_vertex(vertex_id(words[2], line_no));
            assigned[l] = true;
        } else if (kw == "openpair" && words.size() == 3) {
            auto a = parse_label(words[1], f.k(), line_no);
            auto b = parse_label(words[2], f.k(), line_no);
            if (a == b) throw ParseError("openpair joins an open end to itself", line_no);
            if (assigned[a] || assigned[b]) throw ParseError("open end used twice", line_no);
            f.ends[a] = OpenTarget::to_end(b);
            f.ends[b] = OpenTarget::to_end(a);
            assigned[a] = assigned[b] = true;
        } else {
            throw ParseError("unrecognized line '" + raw + "'", line_no);
        }
    }
    if (!have_header) throw ParseError("missing 'graph' or 'fragment' header");
    for (std::size_t l = 0; l < assigned.size(); ++l)
        if (!assigned[l]) throw ParseError("open end " + std::to_string(l + 1) + " is never attached");
    return f;
}

namespace {

void format_core(std::ostream& out, const Graph& g) {
    for (std::size_t v = 0; v < g.vertex_count; ++v) out << "vertex v" << v + 1 << '\n';
    for (auto [u, v] : g.edges) {
        if (u == v)
            out << "loop v" << u + 1 << '\n';
        else
            out << "edge v" << u + 1 << " v" << v + 1 << '\n';
    }
    for (std::size_t c = 0; c < g.circles; ++c) out << "circle\n";
}

}  // namespace

std::string format_fragment(const Fragment& f) {
    if (f.k() == 0) return format_graph(f.core);
    std::ostringstream out;
    out << "fragment k=" << f.k() << '\n';
    format_core(out, f.core);
    for (std::size_t l = 0; l < f.k(); ++l) {
        const auto& t = f.ends[l];
        if (t.is_vertex())
            out << "open " << l + 1 << " v" << t.index + 1 << '\n';
        else if (t.index > l)
            out << "openpair " << l + 1 << ' ' << t.index + 1 << '\n';
    }
    return out.str();
}

std::string format_graph(const Graph& g) {
    std::ostringstream out;
    out << "graph\n";
    format_core(out, g);
    return out.str();
}

}  // namespace vmodel
