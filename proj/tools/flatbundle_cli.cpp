// Command-line front end. Talks to the library only through the C API.
#include "flatbundle/flatbundle.h"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kInvalidInput = 2;

// "exhaustive" or "sampled:N"
bool parse_mode(const std::string& text, fb_config& config) {
  if (text == "exhaustive") {
    config.escher_mode = FB_ESCHER_EXHAUSTIVE;
    return true;
  }
  const std::string prefix = "sampled:";
  if (text.rfind(prefix, 0) != 0) return false;
  const char* first = text.data() + prefix.size();
  const char* last = text.data() + text.size();
  std::size_t n = 0;
  const auto [end, ec] = std::from_chars(first, last, n);
  if (ec != std::errc() || end != last || n == 0) return false;
  config.escher_mode = FB_ESCHER_SAMPLED;
  config.escher_samples = n;
  return true;
}

int emit(int code, char* output, char* error) {
  if (output) std::fputs(output, stdout);
  if (error && *error) std::fprintf(stderr, "flatbundle: %s\n", error);
  fb_string_free(output);
  fb_string_free(error);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler numbers of flat circle bundles over closed surfaces"};
  app.require_subcommand(1);

  fb_config config;
  fb_config_default(&config);
  std::string format = "human";
  std::string mode;
  app.add_option("--tol", config.relator_tol, "relator deviation tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--rot-tol", config.rot_tol, "rotation number enclosure width")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget", config.rot_budget, "rotation number iteration budget")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
  app.add_option("--seed", config.seed, "random seed")->envname("FLATBUNDLE_SEED");
  app.add_option("--trials", config.trials, "random trials per audit family")
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--mode", mode, "Escher mode: exhaustive or sampled:N");

  std::function<int()> run;
  std::string file;
  int genus = 0;
  std::string out_file;

  auto file_command = [&](const char* name, const char* help, auto fn) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, "input JSON file")->required();
    sub->fallthrough();
    sub->callback([&, fn] {
      run = [&, fn] {
        char* output = nullptr;
        char* error = nullptr;
        const int code = fn(file.c_str(), &config, &output, &error);
        return emit(code, output, error);
      };
    });
  };
  auto genus_command = [&](const char* name, const char* help, auto fn) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("genus", genus, "surface genus")->required();
    sub->fallthrough();
    sub->callback([&, fn] {
      run = [&, fn] {
        char* output = nullptr;
        char* error = nullptr;
        const int code = fn(genus, &config, &output, &error);
        return emit(code, output, error);
      };
    });
    return sub;
  };

  file_command("euler-rep", "Euler number of a representation file", fb_cmd_euler_rep);
  file_command("euler-vertices", "exact weight sum of a vertex file", fb_cmd_euler_vertices);
  file_command("sullivan", "degree of a corner loop", fb_cmd_sullivan);
  file_command("cover", "doubling check on the double cover", fb_cmd_cover);
  genus_command("escher", "Escher order exclusion certificate", fb_cmd_escher);
  genus_command("prove-mw", "replay the bound |e| <= 2g - 2", fb_cmd_prove_mw);
  {
    auto* sub = app.add_subcommand("fuchsian", "side-pairing representation of the regular 4g-gon");
    sub->add_option("genus", genus, "surface genus")->required();
    sub->add_option("-o,--output", out_file, "write the representation file here");
    sub->fallthrough();
    sub->callback([&] {
      run = [&] {
        char* output = nullptr;
        char* error = nullptr;
        const int code = fb_cmd_fuchsian(genus, out_file.empty() ? nullptr : out_file.c_str(),
                                         &config, &output, &error);
        return emit(code, output, error);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidInput;
  }
  config.format = format == "machine" ? FB_FORMAT_MACHINE : FB_FORMAT_HUMAN;
  if (!mode.empty() && !parse_mode(mode, config)) {
    std::fprintf(stderr, "flatbundle: --mode must be exhaustive or sampled:N, got \"%s\"\n",
                 mode.c_str());
    return kInvalidInput;
  }
  return run();
}
