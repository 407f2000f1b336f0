#include "agentminer/petri_io.hpp"

#include <fstream>
#include <sstream>

#include "xml_mini.hpp"

namespace am {

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

std::string to_pnml(const WorkflowNet& wfnet) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<pnml>\n  <net id=\"net1\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n";
    out << "    <page id=\"page1\">\n";
    for (const auto& p : wfnet.net.places) {
        out << "      <place id=\"" << xml::escape(p) << "\">";
        if (p == wfnet.initial_place)
            out << "<initialMarking><text>1</text></initialMarking>";
        out << "</place>\n";
    }
    for (const auto& t : wfnet.net.transitions) {
        const std::string& label = wfnet.net.label_of(t);
        out << "      <transition id=\"" << xml::escape(t) << "\">";
        if (!label.empty()) out << "<name><text>" << xml::escape(label) << "</text></name>";
        out << "<toolspecific tool=\"agentminer\" version=\"1.0\"><visible>"
            << (label.empty() ? "false" : "true") << "</visible></toolspecific>";
        out << "</transition>\n";
    }
    std::size_t arc = 0;
    for (const auto& [from, to] : wfnet.net.flow) {
        out << "      <arc id=\"arc" << arc++ << "\" source=\"" << xml::escape(from)
            << "\" target=\"" << xml::escape(to) << "\"/>\n";
    }
    out << "    </page>\n  </net>\n</pnml>\n";
    return out.str();
}

void write_pnml(const WorkflowNet& wfnet, const std::string& path) {
    write_file(path, to_pnml(wfnet));
}

WorkflowNet read_pnml(const std::string& path) {
    auto root = xml::parse_file(path);
    if (root->name != "pnml") throw std::runtime_error("not a PNML document: " + path);
    const xml::Element* net = root->first("net");
    if (!net) throw std::runtime_error("PNML without a net element: " + path);

    WorkflowNet wfnet;
    std::string marked_place;

    // Collect nodes from the net element and any pages below it.
    std::vector<const xml::Element*> scopes{net};
    for (const auto* page : net->all("page")) scopes.push_back(page);

    for (const auto* scope : scopes) {
        for (const auto* place : scope->all("place")) {
            std::string id = place->attribute("id");
            if (id.empty()) throw std::runtime_error("PNML place without id");
            wfnet.net.add_place(id);
            if (const auto* marking = place->first("initialMarking")) {
                const auto* text = marking->first("text");
                if (text && text->text != "0") marked_place = id;
            }
        }
        for (const auto* transition : scope->all("transition")) {
            std::string id = transition->attribute("id");
            if (id.empty()) throw std::runtime_error("PNML transition without id");
            std::string label;
            if (const auto* name = transition->first("name")) {
                if (const auto* text = name->first("text")) label = text->text;
            }
            if (const auto* tool = transition->first("toolspecific")) {
                if (const auto* visible = tool->first("visible")) {
                    if (visible->text == "false") label.clear();
                }
            }
            wfnet.net.add_transition(id, label);
        }
    }
    for (const auto* scope : scopes) {
        for (const auto* arc : scope->all("arc")) {
            std::string source = arc->attribute("source");
            std::string target = arc->attribute("target");
            if (source.empty() || target.empty()) throw std::runtime_error("PNML arc without endpoints");
            wfnet.net.add_arc(source, target);
        }
    }

    // Initial and final places: the marked place if present, otherwise the
    // unique source; the unique sink.
    std::vector<std::string> sources, sinks;
    for (const auto& p : wfnet.net.places) {
        if (wfnet.net.preset(p).empty()) sources.push_back(p);
        if (wfnet.net.postset(p).empty()) sinks.push_back(p);
    }
    if (!marked_place.empty())
        wfnet.initial_place = marked_place;
    else if (sources.size() == 1)
        wfnet.initial_place = sources.front();
    else
        throw std::runtime_error("cannot determine the initial place of " + path);
    if (sinks.size() == 1)
        wfnet.final_place = sinks.front();
    else
        throw std::runtime_error("cannot determine the final place of " + path);
    return wfnet;
}

namespace {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

std::string to_dot(const WorkflowNet& wfnet, const std::string& graph_name) {
    std::ostringstream out;
    out << "digraph " << dot_quote(graph_name) << " {\n  rankdir=LR;\n";
    for (const auto& p : wfnet.net.places) {
        std::string decoration;
        if (p == wfnet.initial_place) decoration = ", penwidth=2, xlabel=\"i\"";
        if (p == wfnet.final_place) decoration = ", penwidth=2, xlabel=\"f\"";
        out << "  " << dot_quote(p) << " [shape=circle, label=\"\"" << decoration << "];\n";
    }
    for (const auto& t : wfnet.net.transitions) {
        const std::string& label = wfnet.net.label_of(t);
        if (label.empty()) {
            out << "  " << dot_quote(t) << " [shape=box, style=filled, fillcolor=black, label=\"\", width=0.15, height=0.4];\n";
        } else {
            out << "  " << dot_quote(t) << " [shape=box, label=" << dot_quote(label) << "];\n";
        }
    }
    for (const auto& [from, to] : wfnet.net.flow)
        out << "  " << dot_quote(from) << " -> " << dot_quote(to) << ";\n";
    out << "}\n";
    return out.str();
}

void write_dot(const WorkflowNet& wfnet, const std::string& path, const std::string& graph_name) {
    write_file(path, to_dot(wfnet, graph_name));
}

}  // namespace am
