#pragma once

#define SVRTREE_VERSION "0.1.0"
