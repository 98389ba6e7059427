#include "mseuler/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace mseuler {

namespace {

std::string trim(const std::string& s)
{
   const auto b = s.find_first_not_of(" \t\r\n");
   if (b == std::string::npos) { return ""; }
   const auto e = s.find_last_not_of(" \t\r\n");
   return s.substr(b, e - b + 1);
}

std::vector<double> parse_double_list(const std::string& s)
{
   std::vector<double> out;
   std::stringstream ss(s);
   std::string item;
   while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) { out.push_back(std::stod(item)); }
   }
   return out;
}

} // namespace

stepper::Scheme parse_scheme(const std::string& s)
{
   if (s == "low") { return stepper::Scheme::low; }
   if (s == "high") { return stepper::Scheme::high; }
   if (s == "limited") { return stepper::Scheme::limited; }
   throw std::invalid_argument("scheme must be low|high|limited, got '" + s + "'");
}

bool parse_on_off(const std::string& s)
{
   if (s == "on" || s == "true" || s == "1") { return true; }
   if (s == "off" || s == "false" || s == "0") { return false; }
   throw std::invalid_argument("expected on|off, got '" + s + "'");
}

RunConfig parse_config_text(const std::string& text, const std::string& origin)
{
   std::map<std::string, std::string> kv;
   int species_count = 0;
   std::string prefix;

   std::istringstream in(text);
   std::string line;
   int lineno = 0;
   while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) { line = line.substr(0, hash); }
      line = trim(line);
      if (line.empty()) { continue; }

      if (line.front() == '[') {
         if (line.back() != ']') {
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": unterminated section header");
         }
         std::string section = trim(line.substr(1, line.size() - 2));
         if (section.rfind("species", 0) == 0) {
            ++species_count;
            prefix = "species." + std::to_string(species_count) + ".";
         } else {
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": unknown section [" + section + "]");
         }
         continue;
      }

      const auto eq = line.find('=');
      if (eq == std::string::npos) {
         throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                     ": expected key = value");
      }
      kv[prefix + trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
   }

   RunConfig cfg;
   auto get = [&](const std::string& key) -> const std::string* {
      auto it = kv.find(key);
      return (it == kv.end()) ? nullptr : &it->second;
   };

   if (const auto* v = get("problem")) { cfg.problem = *v; }
   if (const auto* v = get("cells")) { cfg.cells_x = std::stoi(*v); }
   if (const auto* v = get("cells_y")) { cfg.cells_y = std::stoi(*v); }
   if (const auto* v = get("t_final")) { cfg.t_final = std::stod(*v); }
   if (const auto* v = get("cfl")) { cfg.cfl = std::stod(*v); }
   if (const auto* v = get("scheme")) { cfg.scheme = parse_scheme(*v); }
   if (const auto* v = get("relax")) { cfg.relax = parse_on_off(*v); }
   if (const auto* v = get("output")) { cfg.output = *v; }
   if (const auto* v = get("output_every")) { cfg.output_every = std::stoi(*v); }
   if (const auto* v = get("snapshot_times")) { cfg.snapshot_times = parse_double_list(*v); }
   if (const auto* v = get("deterministic")) { cfg.deterministic = parse_on_off(*v); }
   if (const auto* v = get("threads")) { cfg.threads = std::stoi(*v); }
   if (const auto* v = get("max_steps")) { cfg.max_steps = std::stol(*v); }

   for (int k = 1; k <= species_count; ++k) {
      const std::string base = "species." + std::to_string(k) + ".";
      const auto* cp = get(base + "cp");
      const auto* cv = get(base + "cv");
      if (!cp || !cv) {
         throw std::invalid_argument(origin + ": species " + std::to_string(k) +
                                     " needs both cp and cv");
      }
      cfg.species_cp.push_back(std::stod(*cp));
      cfg.species_cv.push_back(std::stod(*cv));
   }

   if (cfg.problem.empty()) {
      throw std::invalid_argument(origin + ": missing required key 'problem'");
   }
   std::sort(cfg.snapshot_times.begin(), cfg.snapshot_times.end());
   return cfg;
}

RunConfig parse_config_file(const std::string& path)
{
   std::ifstream in(path);
   if (!in) { throw std::runtime_error("cannot open config file: " + path); }
   std::stringstream ss;
   ss << in.rdbuf();
   return parse_config_text(ss.str(), path);
}

} // namespace mseuler
