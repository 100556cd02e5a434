#!/usr/bin/env python3
"""Regenerate the bundled sample images in data/samples/.

Photo-like images come from scikit-image's bundled data set; UI-like images
are rendered here with Pillow and the DejaVu fonts. Output is deterministic.
"""

import argparse
import random
from pathlib import Path

import numpy as np
from PIL import Image, ImageDraw, ImageFont
from skimage import data

PHOTO_SIDE = 1024  # cap only; smaller originals stay at native size
FONT_DIR = Path("/usr/share/fonts/truetype/dejavu")


def to_rgb8(arr):
    arr = np.asarray(arr)
    if arr.dtype != np.uint8:
        arr = np.clip(arr * (255.0 if arr.max() <= 1.0 else 1.0), 0, 255).astype(np.uint8)
    if arr.ndim == 2:
        arr = np.stack([arr] * 3, axis=-1)
    if arr.shape[-1] == 4:
        arr = arr[..., :3]
    return arr


def fit(img, side):
    """Shrink so the longer side is at most `side` pixels; never upsample."""
    w, h = img.size
    scale = side / max(w, h)
    if scale >= 1.0:
        return img
    return img.resize((round(w * scale), round(h * scale)), Image.LANCZOS)


def photos():
    yield "photo_astronaut", data.astronaut()
    yield "photo_coffee", data.coffee()
    yield "photo_chelsea", data.chelsea()
    yield "photo_rocket", data.rocket()
    yield "photo_ihc", data.immunohistochemistry()
    yield "photo_hubble", data.hubble_deep_field()
    yield "photo_retina", data.retina()
    yield "photo_colorwheel", data.colorwheel()
    yield "photo_camera", data.camera()
    yield "photo_coins", data.coins()
    yield "photo_moon", data.moon()
    yield "photo_brick", data.brick()
    yield "photo_grass", data.grass()
    yield "photo_gravel", data.gravel()


UI_SCALE = 3  # mock UIs are laid out in points and rendered at 3x density


def font(size, bold=False, mono=False):
    name = "DejaVuSansMono.ttf" if mono else "DejaVuSans-Bold.ttf" if bold else "DejaVuSans.ttf"
    return ImageFont.truetype(str(FONT_DIR / name), size * UI_SCALE)


class Canvas:
    """ImageDraw wrapper taking coordinates in points."""

    def __init__(self, size, color):
        self.image = Image.new("RGB", (size[0] * UI_SCALE, size[1] * UI_SCALE), color)
        self.draw = ImageDraw.Draw(self.image)

    @staticmethod
    def _s(xy):
        return [v * UI_SCALE for v in xy] if isinstance(xy[0], (int, float)) else [(x * UI_SCALE, y * UI_SCALE) for x, y in xy]

    def rectangle(self, xy, **kw):
        self.draw.rectangle(self._s(xy), **kw)

    def rounded_rectangle(self, xy, r, **kw):
        self.draw.rounded_rectangle(self._s(xy), r * UI_SCALE, **kw)

    def ellipse(self, xy, **kw):
        self.draw.ellipse(self._s(xy), **kw)

    def line(self, xy, width=1, **kw):
        self.draw.line(self._s(xy), width=width * UI_SCALE, **kw)

    def text(self, xy, text, **kw):
        self.draw.text(tuple(self._s(xy)), text, **kw)


WORDS = ("account balance transfer payment invoice meeting password message "
         "schedule report private confidential delivery update review budget "
         "salary contract doctor results project deadline family photos").split()


def sentence(rng, n):
    return " ".join(rng.choice(WORDS) for _ in range(n)).capitalize()


def ui_chat(rng):
    c = Canvas((360, 640), (245, 245, 247))
    d = c
    d.rectangle([0, 0, 360, 56], fill=(0, 122, 255))
    d.text((16, 16), "Alex Morgan", font=font(20, True), fill="white")
    y = 72
    for i in range(9):
        mine = i % 2 == 1
        text = sentence(rng, rng.randint(3, 6))
        w = min(280, 9 * len(text) + 24)
        x0 = 360 - w - 12 if mine else 12
        d.rounded_rectangle([x0, y, x0 + w, y + 48], 14, fill=(0, 122, 255) if mine else (229, 229, 234))
        d.text((x0 + 12, y + 6), text[:30], font=font(14), fill="white" if mine else "black")
        d.text((x0 + 12, y + 26), text[30:60], font=font(14), fill="white" if mine else "black")
        y += 60
    return c.image


def ui_bank(rng):
    c = Canvas((360, 640), "white")
    d = c
    d.rectangle([0, 0, 360, 160], fill=(20, 60, 110))
    d.text((20, 24), "Checking ****4821", font=font(16), fill=(200, 220, 255))
    d.text((20, 60), f"${rng.randint(1000, 99999):,}.{rng.randint(0, 99):02d}", font=font(36, True), fill="white")
    y = 180
    for _ in range(10):
        d.text((20, y), sentence(rng, 2), font=font(15), fill=(30, 30, 30))
        amount = f"-${rng.randint(1, 999)}.{rng.randint(0, 99):02d}"
        d.text((260, y), amount, font=font(15, True), fill=(190, 30, 45))
        d.line([20, y + 36, 340, y + 36], fill=(220, 220, 220))
        y += 44
    return c.image


def ui_email(rng):
    c = Canvas((480, 360), (252, 252, 252))
    d = c
    d.rectangle([0, 0, 120, 360], fill=(40, 44, 52))
    for i, label in enumerate(["Inbox", "Sent", "Drafts", "Spam", "Trash"]):
        d.text((14, 20 + 30 * i), label, font=font(14), fill=(220, 220, 220))
    for i in range(8):
        y = 10 + 43 * i
        d.text((132, y), sentence(rng, 2), font=font(13, True), fill=(20, 20, 20))
        d.text((132, y + 18), sentence(rng, 6)[:44], font=font(12), fill=(90, 90, 90))
    return c.image


def ui_document(rng):
    c = Canvas((420, 512), "white")
    d = c
    d.text((24, 20), "Quarterly " + sentence(rng, 2), font=font(22, True), fill="black")
    y = 64
    for _ in range(22):
        d.text((24, y), sentence(rng, 7)[:52], font=font(13), fill=(25, 25, 25))
        y += 19
    return c.image


def ui_code(rng):
    c = Canvas((480, 320), (30, 30, 30))
    d = c
    colors = [(86, 156, 214), (206, 145, 120), (181, 206, 168), (220, 220, 170), (212, 212, 212)]
    mono = font(13, mono=True)
    for i in range(16):
        d.text((8, 8 + 19 * i), f"{i + 1:>3}", font=mono, fill=(110, 110, 110))
        x = 44
        for _ in range(rng.randint(1, 5)):
            word = rng.choice(WORDS)
            d.text((x, 8 + 19 * i), word, font=mono, fill=rng.choice(colors))
            x += 8 * (len(word) + 1)
    return c.image


def ui_dashboard(rng):
    c = Canvas((512, 320), (240, 242, 245))
    d = c
    for i in range(3):
        x = 16 + 164 * i
        d.rounded_rectangle([x, 16, x + 148, 96], 8, fill="white")
        d.text((x + 12, 26), rng.choice(WORDS).title(), font=font(13), fill=(100, 100, 100))
        d.text((x + 12, 50), f"{rng.randint(10, 9999):,}", font=font(26, True), fill=(20, 20, 20))
    d.rounded_rectangle([16, 112, 496, 304], 8, fill="white")
    pts = [(32 + 29 * i, 280 - rng.randint(10, 150)) for i in range(16)]
    d.line(pts, fill=(0, 150, 136), width=3)
    for i in range(16):
        h = rng.randint(10, 60)
        d.rectangle([32 + 29 * i, 290 - h, 48 + 29 * i, 290], fill=(255, 152, 0))
    return c.image


def ui_keypad(rng):
    c = Canvas((360, 480), (18, 18, 18))
    d = c
    d.text((90, 30), "Enter passcode", font=font(20), fill="white")
    for i, key in enumerate("123456789*0#"):
        cx, cy = 70 + 110 * (i % 3), 130 + 85 * (i // 3)
        d.ellipse([cx - 34, cy - 34, cx + 34, cy + 34], fill=(60, 60, 60))
        d.text((cx - 9, cy - 16), key, font=font(28), fill="white")
    return c.image


def uis():
    rng = random.Random(20240615)
    yield "ui_chat", ui_chat(rng)
    yield "ui_bank", ui_bank(rng)
    yield "ui_email", ui_email(rng)
    yield "ui_document", ui_document(rng)
    yield "ui_code", ui_code(rng)
    yield "ui_dashboard", ui_dashboard(rng)
    yield "ui_keypad", ui_keypad(rng)


def main():
    global UI_SCALE
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "samples")
    ap.add_argument("--photo-side", type=int, default=PHOTO_SIDE)
    ap.add_argument("--ui-scale", type=int, default=UI_SCALE)
    args = ap.parse_args()
    UI_SCALE = args.ui_scale
    args.out.mkdir(parents=True, exist_ok=True)
    count = 0
    for name, arr in photos():
        fit(Image.fromarray(to_rgb8(arr)), args.photo_side).save(args.out / f"{name}.png", optimize=True)
        count += 1
    for name, img in uis():
        img.convert("RGB").save(args.out / f"{name}.png", optimize=True)
        count += 1
    print(f"wrote {count} images to {args.out}")


if __name__ == "__main__":
    main()
