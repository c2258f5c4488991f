#pragma once

// Shipped scenario presets, embedded at build time from scenarios/*.json.
// Declarations live in cmrp/scenario.hpp (preset_names, preset_json).
