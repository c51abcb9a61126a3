#include "regracut/io.hpp"

#include "regracut/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace regracut {

namespace {

    bool next_content_line(std::istream & in, std::string & line, int & line_no)
    {
        while (std::getline(in, line)) {
            ++line_no;
            if (! line.empty() && line.back() == '\r')
                fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": CR line endings are not accepted");
            if (line.find_first_not_of(" \t") != std::string::npos)
                return true;
        }
        return false;
    }

    [[noreturn]] void parse_error(int line_no, const std::string & what)
    {
        fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + what);
    }

} // namespace

void write_rgraph(std::ostream & out, const ColoredGraph & g)
{
    out << "rgraph " << g.r() << ' ' << g.vertex_count() << '\n';
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v = u + 1; v < g.vertex_count(); ++v)
            out << u << ' ' << v << ' ' << g.color(u, v) << '\n';
}

void write_digraph(std::ostream & out, const Digraph & g)
{
    out << "digraph " << g.vertex_count() << '\n';
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        for (Vertex v = u + 1; v < g.vertex_count(); ++v)
            out << u << ' ' << v << ' ' << to_token(g.arrow(u, v)) << '\n';
}

void write_graph(std::ostream & out, const AnyGraph & g)
{
    std::visit([&](const auto & x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ColoredGraph>)
            write_rgraph(out, x);
        else
            write_digraph(out, x);
    }, g);
}

AnyGraph read_graph(std::istream & in)
{
    std::string line;
    int line_no = 0;
    if (! next_content_line(in, line, line_no))
        fail(ErrorKind::ParseError, "empty graph file");

    std::istringstream header(line);
    std::string kind;
    header >> kind;
    if (kind == "rgraph") {
        int r = 0, n = 0;
        if (! (header >> r >> n))
            parse_error(line_no, "expected 'rgraph <r> <n>'");
        std::vector<ColorAssignment> assignments;
        while (next_content_line(in, line, line_no)) {
            std::istringstream fields(line);
            ColorAssignment a{};
            std::string extra;
            if (! (fields >> a.u >> a.v >> a.color) || (fields >> extra))
                parse_error(line_no, "expected '<u> <v> <color>'");
            if (a.u >= a.v)
                parse_error(line_no, "pairs must be written with u < v");
            assignments.push_back(a);
        }
        return ColoredGraph::from_assignments(n, r, assignments);
    }
    if (kind == "digraph") {
        int n = 0;
        if (! (header >> n))
            parse_error(line_no, "expected 'digraph <n>'");
        std::vector<StateAssignment> assignments;
        while (next_content_line(in, line, line_no)) {
            std::istringstream fields(line);
            StateAssignment a{};
            std::string token, extra;
            if (! (fields >> a.u >> a.v >> token) || (fields >> extra))
                parse_error(line_no, "expected '<u> <v> <state>'");
            auto state = arrow_from_token(token);
            if (! state)
                fail(ErrorKind::BadState, "line " + std::to_string(line_no) + ": unknown state '" + token + "'");
            a.state = *state;
            assignments.push_back(a);
        }
        return Digraph::from_assignments(n, assignments);
    }
    parse_error(line_no, "unknown graph kind '" + kind + "'");
}

std::string to_text(const AnyGraph & g)
{
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

AnyGraph graph_from_text(const std::string & text)
{
    std::istringstream in(text);
    return read_graph(in);
}

std::string read_file(const std::filesystem::path & path)
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        fail(ErrorKind::ParseError, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path & path, const std::string & content)
{
    std::ofstream out(path, std::ios::binary);
    if (! out)
        fail(ErrorKind::ParseError, "cannot write " + path.string());
    out << content;
}

AnyGraph load_graph(const std::filesystem::path & path)
{
    return graph_from_text(read_file(path));
}

void save_graph(const std::filesystem::path & path, const AnyGraph & g)
{
    write_file(path, to_text(g));
}

std::vector<VertexSet> parse_vertex_sets(const std::string & json_text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    }
    catch (const nlohmann::json::exception & e) {
        fail(ErrorKind::ParseError, e.what());
    }
    if (! doc.is_array())
        fail(ErrorKind::ParseError, "partition must be a JSON array of arrays");
    std::vector<VertexSet> sets;
    for (const auto & block : doc) {
        if (! block.is_array())
            fail(ErrorKind::ParseError, "partition must be a JSON array of arrays");
        VertexSet s;
        for (const auto & v : block) {
            if (! v.is_number_integer())
                fail(ErrorKind::ParseError, "vertex indices must be integers");
            s.push_back(v.get<Vertex>());
        }
        sets.push_back(std::move(s));
    }
    return sets;
}

std::string vertex_sets_to_json(const std::vector<VertexSet> & sets)
{
    return nlohmann::json(sets).dump();
}

std::vector<VertexSet> load_vertex_sets(const std::filesystem::path & path)
{
    return parse_vertex_sets(read_file(path));
}

} // namespace regracut
