#include "corrclus/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace corrclus::io {

namespace {

// Pulls the next line (without newline) off `rest`; requires the newline.
std::string_view take_line(std::string_view& rest, std::size_t line_no) {
    if (rest.empty()) throw ParseError(line_no, "unexpected end of file");
    const std::size_t nl = rest.find('\n');
    if (nl == std::string_view::npos) throw ParseError(line_no, "missing final newline");
    std::string_view line = rest.substr(0, nl);
    rest.remove_prefix(nl + 1);
    return line;
}

template <typename T>
T parse_number(std::string_view token, std::size_t line_no, const char* what) {
    T value{};
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line_no, std::string("bad ") + what);
    return value;
}

}  // namespace

SignedCompleteGraph parse_instance(std::string_view text) {
    std::string_view rest = text;
    std::size_t line_no = 1;
    std::string_view header = take_line(rest, line_no);
    if (header.substr(0, 5) != "ccv1 ") throw ParseError(1, "bad magic, expected 'ccv1 <n>'");
    const auto n = parse_number<std::uint32_t>(header.substr(5), 1, "vertex count");
    if (n < 1) throw ParseError(1, "vertex count must be >= 1");

    SignedCompleteGraph g(n);
    for (Vertex i = 0; i + 1 < n; ++i) {
        ++line_no;
        std::string_view row;
        try {
            row = take_line(rest, line_no);
        } catch (const ParseError&) {
            throw ParseError(line_no, "missing label row for vertex " + std::to_string(i));
        }
        const std::size_t expect = n - 1 - i;
        if (row.size() != expect)
            throw ParseError(line_no, "expected " + std::to_string(expect) + " labels, got " +
                                          std::to_string(row.size()));
        for (std::size_t t = 0; t < expect; ++t) {
            if (row[t] == '+')
                g.set_label(i, static_cast<Vertex>(i + 1 + t), +1);
            else if (row[t] != '-')
                throw ParseError(line_no, "illegal label character");
        }
    }
    if (!rest.empty()) throw ParseError(line_no + 1, "trailing content after instance");
    return g;
}

std::string serialize_instance(const SignedCompleteGraph& g) {
    std::string out = "ccv1 " + std::to_string(g.n()) + "\n";
    for (Vertex i = 0; i + 1 < g.n(); ++i) {
        for (Vertex j = i + 1; j < g.n(); ++j) out.push_back(g.is_plus(i, j) ? '+' : '-');
        out.push_back('\n');
    }
    return out;
}

Clustering parse_solution(std::string_view text) {
    std::string_view rest = text;
    std::string_view header = take_line(rest, 1);
    if (header.substr(0, 8) != "ccsolv1 ")
        throw ParseError(1, "bad magic, expected 'ccsolv1 <n> <k>'");
    std::string_view tail = header.substr(8);
    const std::size_t sp = tail.find(' ');
    if (sp == std::string_view::npos) throw ParseError(1, "bad header, expected '<n> <k>'");
    const auto n = parse_number<std::uint32_t>(tail.substr(0, sp), 1, "vertex count");
    const auto k = parse_number<ClusterId>(tail.substr(sp + 1), 1, "cluster count");
    if (n < 1 || k < 1) throw ParseError(1, "counts must be >= 1");

    std::string_view ids = take_line(rest, 2);
    Clustering c{k, {}};
    c.assignment.reserve(n);
    std::size_t pos = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (v > 0) {
            if (pos >= ids.size() || ids[pos] != ' ')
                throw ParseError(2, "expected single space between ids");
            ++pos;
        }
        std::size_t end = pos;
        while (end < ids.size() && ids[end] != ' ') ++end;
        const auto id = parse_number<ClusterId>(ids.substr(pos, end - pos), 2, "cluster id");
        if (id >= k) throw ParseError(2, "cluster id out of range");
        c.assignment.push_back(id);
        pos = end;
    }
    if (pos != ids.size()) throw ParseError(2, "trailing content after ids");
    if (!rest.empty()) throw ParseError(3, "trailing content after solution");
    return c;
}

std::string serialize_solution(const Clustering& c) {
    check_clustering(c);
    std::string out =
        "ccsolv1 " + std::to_string(c.assignment.size()) + " " + std::to_string(c.k) + "\n";
    for (std::size_t v = 0; v < c.assignment.size(); ++v) {
        if (v > 0) out.push_back(' ');
        out += std::to_string(c.assignment[v]);
    }
    out.push_back('\n');
    return out;
}

std::string instance_hash_hex(const SignedCompleteGraph& g) {
    const std::string text = serialize_instance(g);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string hex(16, '0');
    for (int i = 15; i >= 0; --i) {
        hex[i] = digits[h & 0xf];
        h >>= 4;
    }
    return hex;
}

RunReport make_report(const SignedCompleteGraph& g, const std::string& algorithm,
                      const SolveReport& solved) {
    RunReport r;
    r.instance_hash = instance_hash_hex(g);
    r.algorithm = algorithm;
    r.agreements = solved.agreements;
    r.disagreements = solved.disagreements;
    r.guarantee_valid = solved.guarantee_valid;
    r.wall_ms = solved.trace.wall_ms;
    r.trace = solved.trace;
    return r;
}

std::string report_line(const RunReport& r, EdgeCount pairs) {
    if (r.agreements + r.disagreements != pairs)
        throw std::logic_error("report violates the complement identity");
    nlohmann::ordered_json j;
    j["instance"] = r.instance_hash;
    j["algo"] = r.algorithm;
    nlohmann::ordered_json params;
    params["k"] = r.k;
    params["eps"] = r.epsilon;
    params["delta"] = r.delta;
    if (r.sample_override) params["sample_override"] = *r.sample_override;
    if (r.enumeration_budget) params["enum_budget"] = *r.enumeration_budget;
    if (r.full_sample) params["full_sample"] = true;
    j["params"] = params;
    j["seed"] = r.seed;
    j["agreements"] = r.agreements;
    j["disagreements"] = r.disagreements;
    j["guarantee_valid"] = r.guarantee_valid;
    j["wall_ms"] = r.wall_ms;
    nlohmann::ordered_json trace;
    trace["pieces"] = r.trace.pieces_total;
    trace["pieces_nonempty"] = r.trace.pieces_nonempty;
    trace["sample_target"] = r.trace.sample_target;
    trace["sample_distinct_min"] = r.trace.sample_distinct_min;
    trace["sample_distinct_max"] = r.trace.sample_distinct_max;
    trace["enumerated"] = r.trace.enumerated;
    trace["depth"] = r.trace.recursion_depth;
    trace["truncated"] = r.trace.truncated;
    trace["branch_max_dis"] = r.trace.branch_max_disagreements;
    trace["branch_min_dis"] = r.trace.branch_min_disagreements;
    j["trace"] = trace;
    return j.dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

void append_line(const std::string& path, std::string_view line) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("cannot append to " + path);
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    out.put('\n');
}

}  // namespace corrclus::io
