#include "ehaudit/coverage.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <fstream>
#include <sstream>

namespace ehaudit {

namespace pt = boost::property_tree;

namespace {

long attr_long(const pt::ptree& node, const char* name, long fallback) {
    return node.get<long>(std::string("<xmlattr>.") + name, fallback);
}

std::string attr_str(const pt::ptree& node, const char* name) {
    auto v = node.get_optional<std::string>(std::string("<xmlattr>.") + name);
    if (!v) throw MalformedReport(std::string("missing mandatory attribute: ") + name);
    return *v;
}

void read_counters(const pt::ptree& node, std::map<std::string, Counter>& out) {
    for (const auto& [tag, child] : node) {
        if (tag != "counter") continue;
        Counter c;
        c.missed = attr_long(child, "missed", 0);
        c.covered = attr_long(child, "covered", 0);
        out[attr_str(child, "type")] = c;
    }
}

} // namespace

CoverageModel parse_coverage_report(const std::string& xml_text) {
    pt::ptree tree;
    std::istringstream in(xml_text);
    try {
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
        throw MalformedReport(std::string("XML error: ") + e.what());
    }

    auto report = tree.get_child_optional("report");
    if (!report) throw MalformedReport("no <report> root element");

    CoverageModel model;
    for (const auto& [ptag, pkg] : *report) {
        if (ptag != "package") continue;
        std::string pkg_name = pkg.get<std::string>("<xmlattr>.name", "");

        // methods live under <class>, lines under <sourcefile>; join by the
        // class's sourcefilename attribute
        std::map<std::string, std::vector<MethodCoverage>> methods_by_file;
        for (const auto& [ctag, cls] : pkg) {
            if (ctag != "class") continue;
            std::string cls_name = attr_str(cls, "name");
            std::string source_name = cls.get<std::string>("<xmlattr>.sourcefilename", "");
            if (source_name.empty()) {
                // fall back to the outermost class simple name
                auto slash = cls_name.rfind('/');
                std::string simple = cls_name.substr(slash == std::string::npos ? 0 : slash + 1);
                auto dollar = simple.find('$');
                if (dollar != std::string::npos) simple = simple.substr(0, dollar);
                source_name = simple + ".java";
            }
            for (const auto& [mtag, meth] : cls) {
                if (mtag != "method") continue;
                MethodCoverage mc;
                mc.class_name = cls_name;
                mc.name = attr_str(meth, "name");
                mc.desc = meth.get<std::string>("<xmlattr>.desc", "");
                mc.decl_line = static_cast<int>(attr_long(meth, "line", 0));
                std::map<std::string, Counter> counters;
                read_counters(meth, counters);
                if (auto it = counters.find("INSTRUCTION"); it != counters.end())
                    mc.instructions = it->second;
                if (auto it = counters.find("BRANCH"); it != counters.end())
                    mc.branches = it->second;
                if (auto it = counters.find("METHOD"); it != counters.end())
                    mc.covered = it->second.covered > 0;
                else
                    mc.covered = mc.instructions.covered > 0;
                methods_by_file[source_name].push_back(std::move(mc));
            }
        }

        for (const auto& [stag, sf] : pkg) {
            if (stag != "sourcefile") continue;
            FileCoverage fc;
            std::string name = attr_str(sf, "name");
            fc.key = pkg_name.empty() ? name : pkg_name + "/" + name;
            for (const auto& [ltag, ln] : sf) {
                if (ltag != "line") continue;
                CoverageLine cl;
                cl.line_no = static_cast<int>(attr_long(ln, "nr", -1));
                if (cl.line_no < 0) throw MalformedReport("line element without nr attribute");
                cl.mi = attr_long(ln, "mi", 0);
                cl.ci = attr_long(ln, "ci", 0);
                cl.mb = attr_long(ln, "mb", 0);
                cl.cb = attr_long(ln, "cb", 0);
                fc.lines.push_back(cl);
            }
            read_counters(sf, fc.summary);
            if (auto mit = methods_by_file.find(name); mit != methods_by_file.end())
                fc.methods = std::move(mit->second);

            // validate summary counters against line sums; line data wins
            Counter instr, branch;
            for (const auto& l : fc.lines) {
                instr.missed += l.mi;
                instr.covered += l.ci;
                branch.missed += l.mb;
                branch.covered += l.cb;
            }
            auto check = [&](const char* type, const Counter& fromLines) {
                auto it = fc.summary.find(type);
                if (it == fc.summary.end()) return;
                if (it->second.missed != fromLines.missed ||
                    it->second.covered != fromLines.covered) {
                    model.warnings.push_back(fc.key + ": " + type +
                                             " summary disagrees with line data; using lines");
                    it->second = fromLines;
                }
            };
            check("INSTRUCTION", instr);
            check("BRANCH", branch);
            model.files.push_back(std::move(fc));
        }
    }
    return model;
}

CoverageModel parse_coverage_report_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedReport("cannot open coverage report: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_coverage_report(buf.str());
}

} // namespace ehaudit
