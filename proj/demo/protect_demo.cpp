// Protects an image with each preset and reports how close the distant
// observer's view gets to the intended blur.
//
//   protect_demo input.png [output_dir]

#include <filesystem>
#include <iomanip>
#include <iostream>

#include "surfguard/surfguard.hpp"

int main(int argc, char** argv) {
  namespace sg = surfguard;
  if (argc < 2) {
    std::cerr << "usage: " << argv[0] << " input.png [output_dir]\n";
    return 2;
  }
  try {
    const sg::ImageBuffer img = sg::load_image(argv[1]);
    const std::filesystem::path out_dir = argc > 2 ? argv[2] : ".";

    // Distances in inches for a 5.78" phone: user at 10, observer at 41.
    const double factor = sg::downscale_factor(10.0, 41.0, sg::DisplaySpec{});
    std::cout << "downscale factor " << factor << "\n";

    for (const auto& entry : sg::kPresets) {
      const sg::ProtectParams params = sg::preset_params(entry.name);
      const sg::ProtectOutput res = sg::protect_pipeline(img, params);
      const double far = sg::ssim(sg::downscale_view(res.protected_image, factor),
                                  sg::downscale_view(res.target, factor));
      const double near = sg::ssim(res.protected_image, img);
      std::cout << std::left << std::setw(9) << entry.name << std::fixed << std::setprecision(3)
                << " near ssim " << near << "  far ssim vs target " << far << "\n";
      sg::save_image(res.protected_image, out_dir / (std::string(entry.name) + ".png"));
    }
  } catch (const sg::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
