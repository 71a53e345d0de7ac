package corpus.text;

public class Strings {

    public static boolean isPalindrome(String s) {
        int i = 0;
        int j = s.length() - 1;
        while (i < j) {
            if (s.charAt(i) != s.charAt(j)) {
                return false;
            }
            i++;
            j--;
        }
        return true;
    }

    public boolean checkPalindrome(String text) {
        String reversed = new StringBuilder(text).reverse().toString();
        return text.equals(reversed);
    }

    public static boolean palindromic(int number) {
        int original = number;
        int reversed = 0;
        while (number > 0) {
            reversed = reversed * 10 + number % 10;
            number /= 10;
        }
        return original == reversed;
    }

    static boolean mirror(char[] c) {
        for (int a = 0, b = c.length - 1; a < b; a++, b--) {
            if (c[a] != c[b]) {
                return false;
            }
        }
        return true;
    }

    public static boolean isPal(String str) {
        if (str.length() <= 1) {
            return true;
        }
        if (str.charAt(0) != str.charAt(str.length() - 1)) {
            return false;
        }
        return isPal(str.substring(1, str.length() - 1));
    }

    public static boolean ignoreCasePalindrome(String s) {
        String clean = s.replaceAll("[^A-Za-z0-9]", "").toLowerCase();
        int n = clean.length();
        for (int i = 0; i < n / 2; i++) {
            if (clean.charAt(i) != clean.charAt(n - 1 - i)) {
                return false;
            }
        }
        return true;
    }

    public static boolean symmetric(String word) {
        return word.equalsIgnoreCase(new StringBuilder(word).reverse().toString());
    }

    public static boolean test(String input) {
        int left = 0;
        int right = input.length() - 1;
        boolean ok = true;
        while (left < right && ok) {
            ok = input.charAt(left++) == input.charAt(right--);
        }
        return ok;
    }

    public static boolean isPalindromeArray(int[] values) {
        int n = values.length;
        for (int i = 0; i < n / 2; i++) {
            if (values[i] != values[n - i - 1]) {
                return false;
            }
        }
        return true;
    }

    public static boolean readsSameBackwards(String s) {
        String r = "";
        for (int i = s.length() - 1; i >= 0; i--) {
            r = r + s.charAt(i);
        }
        return r.equals(s);
    }
}
