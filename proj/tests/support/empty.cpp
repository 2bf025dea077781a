// Keeps the support library non-empty while helpers are header-only.
