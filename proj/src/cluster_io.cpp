#include "isoclust/cluster_io.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isoclust/errors.hpp"

namespace isoclust {

namespace {

using nlohmann::json;

void put_number(std::string& out, double v) {
    if (!std::isfinite(v)) throw DomainError("to_json: non-finite coordinate");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

void put_string(std::string& out, const std::string& s) { out += json(s).dump(); }

void put_point(std::string& out, Vec2 p) {
    out += '[';
    put_number(out, p.x);
    out += ", ";
    put_number(out, p.y);
    out += ']';
}

[[noreturn]] void schema_error(const std::string& what) { throw StructuralError("cluster json: " + what); }

const json& field(const json& obj, const char* key) {
    if (!obj.is_object()) schema_error(std::string("expected an object holding \"") + key + "\"");
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(std::string("missing field \"") + key + "\"");
    return *it;
}

double number(const json& v, const char* what) {
    if (!v.is_number()) schema_error(std::string(what) + " must be a number");
    return v.get<double>();
}

std::string text(const json& v, const char* what) {
    if (!v.is_string()) schema_error(std::string(what) + " must be a string");
    return v.get<std::string>();
}

const json& array(const json& v, const char* what) {
    if (!v.is_array()) schema_error(std::string(what) + " must be an array");
    return v;
}

Window parse_window(const json& w) {
    if (!w.is_object() || w.size() != 1) schema_error("window must hold exactly one of \"disk\" or \"rect\"");
    if (w.contains("disk")) return Window::disk(number(field(w["disk"], "radius"), "radius"));
    if (w.contains("rect"))
        return Window::rect(number(field(w["rect"], "hx"), "hx"), number(field(w["rect"], "hy"), "hy"));
    schema_error("unknown window shape");
}

}  // namespace

std::string to_json(const DiscreteCluster& c) {
    if (c.window.center() != Vec2{}) throw DomainError("to_json: cluster windows are centred at the origin");
    std::string out = "{\n  \"window\": ";
    if (c.window.is_disk()) {
        out += "{\"disk\": {\"radius\": ";
        put_number(out, c.window.radius());
        out += "}}";
    } else {
        out += "{\"rect\": {\"hx\": ";
        put_number(out, c.window.half_width_x());
        out += ", \"hy\": ";
        put_number(out, c.window.half_width_y());
        out += "}}";
    }

    out += ",\n  \"chambers\": [";
    for (std::size_t i = 0; i < c.chambers.size(); ++i) {
        const ChamberSpec& ch = c.chambers[i];
        out += i ? ",\n    " : "\n    ";
        out += "{\"label\": ";
        put_string(out, ch.label);
        out += ch.proper ? ", \"proper\": true" : ", \"proper\": false";
        if (ch.target_area) {
            out += ", \"target_area\": ";
            put_number(out, *ch.target_area);
        }
        out += '}';
    }
    out += c.chambers.empty() ? "]" : "\n  ]";

    out += ",\n  \"nodes\": [";
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        const Node& n = c.nodes[i];
        out += i ? ",\n    " : "\n    ";
        out += "{\"id\": ";
        put_string(out, n.id);
        out += ", \"x\": ";
        put_number(out, n.position.x);
        out += ", \"y\": ";
        put_number(out, n.position.y);
        out += n.kind == NodeKind::triple_junction ? ", \"kind\": \"junction\"}" : ", \"kind\": \"anchor\"}";
    }
    out += c.nodes.empty() ? "]" : "\n  ]";

    out += ",\n  \"interfaces\": [";
    for (std::size_t i = 0; i < c.interfaces.size(); ++i) {
        const Interface& f = c.interfaces[i];
        out += i ? ",\n    " : "\n    ";
        out += "{\"id\": ";
        put_string(out, f.id);
        out += ", \"left\": ";
        put_string(out, f.left);
        out += ", \"right\": ";
        put_string(out, f.right);
        if (f.closed()) {
            out += ", \"nodes\": []";
        } else {
            out += ", \"nodes\": [";
            put_string(out, f.end_nodes[0]);
            out += ", ";
            put_string(out, f.end_nodes[1]);
            out += ']';
        }
        out += ",\n     \"points\": [";
        for (std::size_t k = 0; k < f.points.size(); ++k) {
            if (k) out += ", ";
            put_point(out, f.points[k]);
        }
        out += "]}";
    }
    out += c.interfaces.empty() ? "]" : "\n  ]";
    out += "\n}\n";
    return out;
}

DiscreteCluster cluster_from_json(const std::string& source) {
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        schema_error(e.what());
    }

    DiscreteCluster c;
    c.window = parse_window(field(doc, "window"));

    for (const json& ch : array(field(doc, "chambers"), "chambers")) {
        const std::string label = text(field(ch, "label"), "label");
        const json& proper = field(ch, "proper");
        if (!proper.is_boolean()) schema_error("proper must be a boolean");
        if (proper.get<bool>()) {
            c.chambers.push_back(ChamberSpec::make_proper(label, number(field(ch, "target_area"), "target_area")));
        } else {
            if (ch.contains("target_area")) schema_error("improper chamber " + label + " has a target area");
            c.chambers.push_back(ChamberSpec::make_improper(label));
        }
    }

    for (const json& n : array(field(doc, "nodes"), "nodes")) {
        const std::string kind = text(field(n, "kind"), "kind");
        NodeKind k;
        if (kind == "junction")
            k = NodeKind::triple_junction;
        else if (kind == "anchor")
            k = NodeKind::window_anchor;
        else
            schema_error("unknown node kind " + kind);
        c.nodes.push_back({text(field(n, "id"), "id"), {number(field(n, "x"), "x"), number(field(n, "y"), "y")}, k});
    }

    for (const json& f : array(field(doc, "interfaces"), "interfaces")) {
        Interface out;
        out.id = text(field(f, "id"), "id");
        out.left = text(field(f, "left"), "left");
        out.right = text(field(f, "right"), "right");
        const json& ends = array(field(f, "nodes"), "nodes");
        if (ends.size() == 2) {
            out.end_nodes = {text(ends[0], "node"), text(ends[1], "node")};
            if (out.end_nodes[0].empty() || out.end_nodes[1].empty()) schema_error("empty node id in " + out.id);
        } else if (!ends.empty()) {
            schema_error("interface " + out.id + " must list two nodes or none");
        }
        for (const json& p : array(field(f, "points"), "points")) {
            if (!p.is_array() || p.size() != 2) schema_error("points must be [x, y] pairs");
            out.points.push_back({number(p[0], "x"), number(p[1], "y")});
        }
        c.interfaces.push_back(std::move(out));
    }
    return c;
}

DiscreteCluster load_cluster(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return cluster_from_json(ss.str());
}

void save_cluster(const DiscreteCluster& c, const std::string& path) { write_file_atomic(path, to_json(c)); }

void write_file_atomic(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DomainError("cannot write " + tmp.string());
        out << contents;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw DomainError("short write to " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw DomainError("cannot rename onto " + path);
    }
}

}  // namespace isoclust
