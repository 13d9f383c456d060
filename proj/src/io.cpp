#include "cake/io.hpp"

#include "cake/errors.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace cake {

namespace {

// Tokens before any '#'.
std::vector<std::string> words(const std::string& line) {
    std::istringstream ss(line.substr(0, line.find('#')));
    std::vector<std::string> out;
    for (std::string w; ss >> w;) out.push_back(w);
    return out;
}

Rat field(const std::string& text, int line_no) {
    try {
        return parse_rat(text);
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }
}

int agent_id(const std::string& text, int line_no) {
    Rat r = field(text, line_no);
    if (r.get_den() != 1 || r < 0 || !r.get_num().fits_sint_p()) throw ParseError(line_no, "bad agent id '" + text + "'");
    return static_cast<int>(r.get_num().get_si());
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path);
    return in;
}

}  // namespace

Profile read_valuations(std::istream& in) {
    std::map<int, std::vector<Segment>> blocks;
    std::map<int, int> opened_at;
    int current = -1;
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        auto w = words(line);
        if (w.empty()) continue;
        if (w[0] == "agent") {
            if (w.size() != 2) throw ParseError(line_no, "expected 'agent <id>'");
            current = agent_id(w[1], line_no);
            if (opened_at.count(current)) throw ParseError(line_no, "agent " + w[1] + " listed twice");
            opened_at[current] = line_no;
            blocks[current];
        } else if (w[0] == "seg") {
            if (w.size() != 4) throw ParseError(line_no, "expected 'seg <left> <right> <density>'");
            if (current < 0) throw ParseError(line_no, "segment before any agent line");
            blocks[current].push_back({field(w[1], line_no), field(w[2], line_no), field(w[3], line_no)});
        } else {
            throw ParseError(line_no, "unknown directive '" + w[0] + "'");
        }
    }
    if (blocks.empty()) throw ParseError(line_no, "no agents");
    Profile out;
    int expect = 0;
    for (auto& [id, segs] : blocks) {
        if (id != expect++) throw ParseError(opened_at[id], "agent ids must be 0..n-1");
        try {
            out.emplace_back(std::move(segs));
        } catch (const InvalidValuation& e) {
            throw ParseError(opened_at[id], "agent " + std::to_string(id) + ": " + e.what());
        }
    }
    return out;
}

Profile read_valuation_file(const std::string& path) {
    auto in = open(path);
    return read_valuations(in);
}

void write_valuations(std::ostream& out, const Profile& vals) {
    for (std::size_t i = 0; i < vals.size(); ++i) {
        out << "agent " << i << '\n';
        for (const Segment& s : vals[i].segments())
            out << "seg " << to_string(s.left) << ' ' << to_string(s.right) << ' ' << to_string(s.density) << '\n';
    }
}

Allocation read_allocation(std::istream& in, std::size_t agents) {
    Allocation a;
    a.origin = Piece::whole();
    a.shares.assign(agents, Piece());
    std::vector<Piece> parts;
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        auto w = words(line);
        if (w.empty()) continue;
        if (w[0] != "share" || w.size() != 4) throw ParseError(line_no, "expected 'share <agent> <left> <right>'");
        int id = agent_id(w[1], line_no);
        if (static_cast<std::size_t>(id) >= agents) throw ParseError(line_no, "no agent " + w[1] + " in the profile");
        Rat l = field(w[2], line_no), r = field(w[3], line_no);
        if (l < 0 || r > 1 || l >= r) throw ParseError(line_no, "interval must satisfy 0 <= left < right <= 1");
        Piece p = Piece::interval(l, r);
        for (const Piece& q : parts)
            if (!interior_disjoint(p, q)) throw ParseError(line_no, "interval overlaps an earlier share");
        parts.push_back(p);
        a.shares[id] = piece_union(a.shares[id], p);
    }
    a.residue = piece_subtract(a.origin, piece_union_all(a.shares));
    return a;
}

Allocation read_allocation_file(const std::string& path, std::size_t agents) {
    auto in = open(path);
    return read_allocation(in, agents);
}

void write_allocation(std::ostream& out, const Allocation& a) {
    for (std::size_t i = 0; i < a.shares.size(); ++i)
        for (const Interval& iv : a.shares[i].intervals())
            out << "share " << i << ' ' << to_string(iv.left) << ' ' << to_string(iv.right) << '\n';
}

Verdicts verify_allocation(const Allocation& a, const Profile& vals, bool connected_checks) {
    Verdicts v;
    v.envy = is_envy_free(a, vals);
    v.proportional = is_proportional(a, vals);
    v.conservation = conservation(a);
    v.complete = v.conservation && a.residue.empty();
    if (connected_checks) {
        bool conn = true, third = true;
        const long n = static_cast<long>(a.shares.size());
        for (long i = 0; i < n; ++i) {
            conn = conn && is_connected(a.shares[i]);
            third = third && vals[i].value(a.shares[i]) * 3 * n >= vals[i].value(a.origin);
        }
        v.connected = conn;
        v.third_share = third;
    }
    return v;
}

void write_report(std::ostream& out, const Allocation& a, const Profile& vals, const Verdicts& v,
                  const QueryCounter* counter) {
    const std::size_t n = a.shares.size();
    for (std::size_t i = 0; i < n; ++i) out << "share " << i << ' ' << a.shares[i].str() << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << "values " << i << ':';
        for (std::size_t j = 0; j < n; ++j) out << ' ' << to_string(vals[i].value(a.shares[j]));
        out << '\n';
    }
    if (!a.residue.empty()) out << "residue " << a.residue.str() << '\n';
    auto verdict = [&](const char* name, bool ok) { out << "verdict " << name << ' ' << (ok ? "pass" : "fail") << '\n'; };
    verdict("envy-free", v.envy.ok);
    if (v.envy.witness) out << "envy " << v.envy.witness->envier << " envies " << v.envy.witness->envied << '\n';
    verdict("proportional", v.proportional);
    verdict("conservation", v.conservation);
    verdict("complete", v.complete);
    if (v.connected) verdict("connected", *v.connected);
    if (v.third_share) verdict("third-share", *v.third_share);
    if (counter) {
        for (std::size_t i = 0; i < counter->agents(); ++i)
            out << "queries " << i << " cut " << counter->cuts(static_cast<int>(i)) << " eval "
                << counter->evals(static_cast<int>(i)) << '\n';
        out << "queries total " << counter->total() << '\n';
    }
}

}  // namespace cake
